"""Enumeration and verification of finite involutory quandles."""
