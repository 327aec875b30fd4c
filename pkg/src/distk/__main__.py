import sys

from distk.cli import main

sys.exit(main())
