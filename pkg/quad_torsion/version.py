"""
__version__ : str
    The current version of the package. This should be updated with each new
    release.
"""
__version__ = '0.1.0'
