#!/usr/bin/env python3
"""Drive every verification command over the shipped case files.

Prints one line per check and exits nonzero if any check lands somewhere
other than its documented verdict.  Useful as a quick end-to-end smoke run:

    python3 scripts/run_all_checks.py
"""

import sys
from pathlib import Path

from freeprod import cli

CASES = Path(__file__).resolve().parent.parent / "cases"

# (argv, expected exit code)
CHECKS = [
    (["check", "--group", str(CASES / "example1.grp"),
      "--subgroup", str(CASES / "example1.sub")], 1),
    (["check", "--group", str(CASES / "example2.grp"),
      "--subgroup", str(CASES / "example2.sub")], 1),
    (["check", "--group", str(CASES / "klein.grp"),
      "--subgroup", str(CASES / "klein.sub")], 0),
    (["verify-theorem2", "--range", "6"], 0),
    (["verify-lemma4", "--group", str(CASES / "p23.grp"),
      "--trials", "100", "--seed", "0"], 0),
    (["verify-lemma4", "--group", str(CASES / "example1.grp"),
      "--trials", "100", "--seed", "0"], 0),
    (["verify-lemma5", "--group", str(CASES / "example2.grp"),
      "--f", "a b", "--g", "c", "--k1", "3", "--k2", "2", "--depth", "6"], 0),
    (["verify-lemma7", "--group", str(CASES / "p23.grp"),
      "--trials", "1000", "--seed", "0"], 0),
    (["axis", "--group", str(CASES / "p23.grp"),
      "--word", "a b", "--window", "1"], 0),
]


def main() -> int:
    failures = 0
    for argv, expected in CHECKS:
        print(f"$ freeprod {' '.join(argv)}")
        code = cli.main(argv)
        status = "ok" if code == expected else f"UNEXPECTED exit {code} (wanted {expected})"
        if code != expected:
            failures += 1
        print(f"  -> exit {code} [{status}]\n")
    if failures:
        print(f"{failures} check(s) off their documented verdict")
        return 1
    print("all checks reproduce their documented verdicts")
    return 0


if __name__ == "__main__":
    sys.exit(main())
