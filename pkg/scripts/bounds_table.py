#!/usr/bin/env python3
"""Print the rate-bound table for multi-burst channels over a small grid,
with the diagonal-embedding achievability flag."""

from streamfec.cli import main

if __name__ == "__main__":
    main(["bounds", "--grid", "z=1..3", "b=1..3", "w=5..12"])
