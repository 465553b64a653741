import sys

from kinkzeta.cli import main

sys.exit(main())
