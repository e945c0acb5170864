"""
pqsaddle entry point.

Usage:
  python pqsaddle.py sibirsky data/example5.sys --level 3
  python pqsaddle.py --help
"""

from cli.commands import main

if __name__ == "__main__":
    raise SystemExit(main())
