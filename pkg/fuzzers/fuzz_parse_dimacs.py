#!/usr/bin/env python3
# pylint: disable=duplicate-code,import-error
"""A fuzzer for the DIMACS parser."""

import sys

import atheris

with atheris.instrument_imports():
    from evenset.errors import GraphError
    from evenset.formats import parse_dimacs, render_dimacs


def test_one_input(data):
    """The entry point for the fuzzer."""
    fdp = atheris.FuzzedDataProvider(data)
    text = fdp.ConsumeUnicode(fdp.remaining_bytes())
    # Legal but large vertex counts only exercise tuple allocation.
    if any(len(token) > 4 for token in text.split() if token.isdigit()):
        return
    try:
        g = parse_dimacs(text)
    except GraphError:
        return
    if parse_dimacs(render_dimacs(g)) != g:
        raise AssertionError("rendered graph does not parse back to itself")


def main():
    """Main function to run the fuzzer."""
    atheris.Setup(sys.argv, test_one_input)
    atheris.Fuzz()


if __name__ == "__main__":
    main()
