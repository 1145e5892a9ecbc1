"""`python -m eigenflats` entry point."""

from eigenflats.cli import main

raise SystemExit(main())
