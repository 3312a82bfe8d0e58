# Single place to set version number:
__version__ = '1.0.0'
