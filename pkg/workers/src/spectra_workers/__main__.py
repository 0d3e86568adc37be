"""Allow running as `python -m spectra_workers <command>`."""

import sys

from spectra_workers.cli import main

sys.exit(main())
