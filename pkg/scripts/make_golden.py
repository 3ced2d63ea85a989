"""Regenerate tests/golden from the reference cases. Review the diff before committing."""

from pathlib import Path

from handlebody.golden import write_all

if __name__ == "__main__":
    target = Path(__file__).resolve().parent.parent / "tests" / "golden"
    for path in write_all(target):
        print(path.relative_to(target.parent.parent))
