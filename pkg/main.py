#!/usr/bin/env python3
"""
Binary Tree Kinship Toolkit
Main entry point for the command-line interface.

Exact arithmetic throughout:
- LR-strings with close, distant, left and right parents
- dyadic order metric r and breadth-first position N
- continued-fraction, Stern-Brocot and Calkin-Wilf labelings
- exhaustive verification suites (python main.py verify all)
"""

import logging
import sys

from src.cli import main

logger = logging.getLogger(__name__)


if __name__ == "__main__":
    try:
        sys.exit(main())
    except Exception as e:
        logger.error(f"Unexpected error: {e}")
        raise
