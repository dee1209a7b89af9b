"""
Tests package initialization.

:return : Test package.
:return: Unit test collection.
"""
