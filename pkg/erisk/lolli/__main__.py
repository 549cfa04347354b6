"""Allow running lolli as ``python -m lolli``."""

import sys

from .cli import main

sys.exit(main())
