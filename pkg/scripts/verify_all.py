"""Run every check target into one workspace and write the consolidated report.

    python scripts/verify_all.py --out out --threads 2
"""
import argparse
import sys

from flagkneser.harness import main

TARGETS = [
    ["verify-gq", "--gq", "w", "--q", "2"],
    ["verify-gq", "--gq", "q4", "--q", "2"],
    ["verify-gq", "--gq", "w", "--q", "3"],
    ["verify-gq", "--gq", "q4", "--q", "3"],
    ["verify-gq", "--gq", "h4"],
    ["verify-pg", "--q", "2"],
    ["verify-pg", "--q", "3"],
    ["verify-pg", "--q", "4"],
]


def run(out: str, threads: int, timeout_s: float) -> int:
    worst = 0
    common = ["--out", out, "--threads", str(threads), "--timeout-s", str(timeout_s)]
    for argv in TARGETS:
        print("==", " ".join(argv), flush=True)
        worst = max(worst, main(argv + common))
    return max(worst, main(["report"] + common))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--timeout-s", type=float, default=3600)
    args = ap.parse_args()
    sys.exit(run(args.out, args.threads, args.timeout_s))
