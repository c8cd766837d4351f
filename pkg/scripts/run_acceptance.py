#!/usr/bin/env python3
"""Run the full acceptance suite through the CLI and summarize.

Equivalent to `kumsyz run --suite acceptance`; reports land in runs/.
"""

import sys

from kumsyz.cli import main

if __name__ == "__main__":
    sys.exit(main(["run", "--suite", "acceptance", *sys.argv[1:]]))
