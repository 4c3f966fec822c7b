"""
geogates Utilities Module
"""
