"""Biometric secret-key binning: error exponents and simulations"""
