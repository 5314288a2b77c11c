import sys

from submult.cli import main

sys.exit(main())
