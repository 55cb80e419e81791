import sys

from qbosonization.main import main

sys.exit(main())
