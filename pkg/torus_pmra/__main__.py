import sys

from torus_pmra.cli import main

sys.exit(main())
