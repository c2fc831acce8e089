import sys

from ris_css.cli import main

if __name__ == "__main__":
    sys.exit(main())
