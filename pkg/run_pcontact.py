"""
p-contact engine entry point
Same commands as `python -m pcontact`
"""

import sys

from pcontact.cli import main


if __name__ == "__main__":
    sys.exit(main())
