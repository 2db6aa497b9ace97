"""
Version strings
"""

# Current version tag
__version__ = "0.1"
