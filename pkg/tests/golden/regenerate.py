"""Rewrite the expected outputs under tests/golden from the current build.

Run after an intentional output change, then review the diff.
"""

from __future__ import annotations

import io
import shlex
import sys
from pathlib import Path

from rlw.cli import run

HERE = Path(__file__).parent


def cases() -> list[tuple[str, list[str]]]:
    out = []
    for line in (HERE / "cases.txt").read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        name, args = line.split("|", 1)
        out.append((name.strip(), shlex.split(args)))
    return out


def capture(argv: list[str]) -> str:
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return f"{out.getvalue()}{err.getvalue()}exit {code}\n"


def main() -> None:
    for name, argv in cases():
        (HERE / f"{name}.out").write_text(capture(argv), encoding="utf-8")
        print(name, file=sys.stderr)


if __name__ == "__main__":
    main()
