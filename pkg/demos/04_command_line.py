"""
Reproducing tables from the command line
========================================

Everything above is also available through ``hermite-lane-emden`` (or
``python -m hermite_lane_emden``). This script just drives the CLI the way a
shell session would and echoes what it prints.
"""

import subprocess
import sys


def run(*args):
    print("$ hermite-lane-emden", " ".join(args))
    res = subprocess.run([sys.executable, "-m", "hermite_lane_emden", *args],
                         capture_output=True, text=True)
    print(res.stdout + res.stderr, end="")
    print(f"(exit {res.returncode})\n")


run("list")
run("solve", "example1-m3", "--grid", "paper")
run("coeffs", "example1-m2")
run("zeros", "--m", "2", "3")
run("solve", "example4", "--sweep", "N=5,10,15")
# A failing run returns a non-zero code and a JSON record on stderr.
run("zeros", "--m", "5")
