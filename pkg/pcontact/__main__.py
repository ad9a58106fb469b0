import sys

from pcontact.cli import main

sys.exit(main())
