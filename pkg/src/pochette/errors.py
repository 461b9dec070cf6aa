"""Shared exception base.

Every error caused by bad user input (CLI arguments, file contents,
invalid slope or embedding data) derives from InputError so the CLI can
map them to a nonzero exit code uniformly.  Semi-decision outcomes
(enumeration overflow, inconclusive searches) are ordinary return
values, never exceptions.
"""


class InputError(Exception):
    pass
