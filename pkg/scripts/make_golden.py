"""Regenerate tests/golden/*.report.json from the *.config.json files next to them.

Runs with the cache disabled.  Only rerun after an intentional change to
report contents, and review the diff.
"""

import json
import sys
from pathlib import Path

from omegalab.cache import Cache
from omegalab.runner import RunConfig, dumps, run

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def main(names=None):
    for cfg_path in sorted(GOLDEN.glob("*.config.json")):
        name = cfg_path.name[: -len(".config.json")]
        if names and name not in names:
            continue
        config = RunConfig.from_mapping(json.loads(cfg_path.read_text()))
        report = run(config, Cache(None))
        (GOLDEN / f"{name}.report.json").write_text(dumps(report))
        print(f"{name}: {report['status']} ({report['timing']['total']} s)")


if __name__ == "__main__":
    main(sys.argv[1:])
