#!/usr/bin/env python3
# pylint: disable=duplicate-code,import-error
"""A fuzzer for the weight file parser."""

import sys

import atheris

with atheris.instrument_imports():
    from evenset.errors import InvalidWeights, ParseError
    from evenset.formats import parse_weights


def test_one_input(data):
    """The entry point for the fuzzer."""
    fdp = atheris.FuzzedDataProvider(data)
    n = fdp.ConsumeIntInRange(0, 64)
    text = fdp.ConsumeUnicode(fdp.remaining_bytes())
    try:
        values = parse_weights(text, n)
    except (InvalidWeights, ParseError):
        return
    if len(values) != n or any(v < 0 for v in values):
        raise AssertionError(f"accepted bad weights {values!r}")


def main():
    """Main function to run the fuzzer."""
    atheris.Setup(sys.argv, test_one_input)
    atheris.Fuzz()


if __name__ == "__main__":
    main()
