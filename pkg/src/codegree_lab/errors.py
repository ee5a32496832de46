"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class CodegreeLabError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 4


class ConstructionError(CodegreeLabError):
    """A builder could not produce a valid object (bad modulus, failed lift, ...)."""

    exit_code = 4


class ResourceCapError(CodegreeLabError):
    """An enumeration exceeded the configured element cap."""

    exit_code = 3


class ConsistencyError(CodegreeLabError):
    """An internal invariant failed; the result would be wrong."""

    exit_code = 4


class UnsupportedCaseError(CodegreeLabError):
    """The input is valid but lies outside the cases this code handles."""

    exit_code = 4


class DescriptorError(CodegreeLabError):
    """A group descriptor is malformed or names an unknown group."""

    exit_code = 2
