#!/usr/bin/env python3
# pylint: disable=duplicate-code,import-error
"""A fuzzer for the fraction parser used by --c and the config file."""

import sys

import atheris

with atheris.instrument_imports():
    from evenset.errors import ParseError
    from evenset.formats import format_fraction, parse_fraction


def test_one_input(data):
    """The entry point for the fuzzer."""
    fdp = atheris.FuzzedDataProvider(data)
    text = fdp.ConsumeUnicode(32)
    # Exponents build enormous integers.
    if "e" in text.lower():
        return
    try:
        value = parse_fraction(text)
    except ParseError:
        return
    if parse_fraction(format_fraction(value)) != value:
        raise AssertionError(f"{text!r} does not survive formatting")


def main():
    """Main function to run the fuzzer."""
    atheris.Setup(sys.argv, test_one_input)
    atheris.Fuzz()


if __name__ == "__main__":
    main()
