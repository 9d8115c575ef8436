"""Verification suites for Pfaffian Atlas claims."""

from .suites import AtlasValidator, CheckReport

__all__ = ['AtlasValidator', 'CheckReport']
