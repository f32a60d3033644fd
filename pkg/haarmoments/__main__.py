"""Runs the command line tool with python -m haarmoments."""

from haarmoments.cli import main

if __name__ == "__main__":
    main()
