"""Entry point for running `python -m evenset`."""

from .cli import main

if __name__ == "__main__":
    main()
