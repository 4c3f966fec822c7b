"""
geogates - geometric-phase quantum gates under rotating Zeeman fields
"""

__version__ = "0.1.0"
