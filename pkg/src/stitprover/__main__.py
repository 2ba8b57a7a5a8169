"""Module entry point: ``python -m stitprover``."""

from .cli import main

if __name__ == "__main__":
    raise SystemExit(main())
