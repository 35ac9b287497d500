import sys

from rateregion.cli import main

sys.exit(main())
