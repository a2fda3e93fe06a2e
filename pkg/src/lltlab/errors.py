"""Shared exception base class.

Every module defines its own failure types next to the code that raises
them; they all inherit from LLTLabError so callers can catch broadly.
"""


class LLTLabError(Exception):
    pass
