import sys

from levelcross.cli import main

sys.exit(main())
