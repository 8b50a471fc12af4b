import sys

from k3b.launcher.run_cli import main

sys.exit(main())
