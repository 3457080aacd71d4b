"""CSV/JSON artifact writers with deterministic bodies.

Floats are rendered with repr (shortest round-trip), no timestamps anywhere,
and every file opens with a comment line carrying the seed, the domain, the
tool version, and the config hash.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import __version__


def _fmt(v) -> str:
    import numpy as np
    if v is None:
        return ""
    if isinstance(v, np.generic):
        v = v.item()
    if isinstance(v, float):
        return repr(v)
    return str(v)


def header_comment(domain: str, seed, config_hash: str) -> str:
    return f"# clusterflux {__version__} domain={domain} seed={seed} config={config_hash}"


def write_csv(path: str | Path, comment: str, columns: list[str], rows) -> Path:
    """rows: iterable of dicts keyed by the column names."""
    lines = [comment, ",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(row.get(c)) for c in columns))
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text("\n".join(lines) + "\n")
    return p


def _json_default(o):
    import numpy as np
    if isinstance(o, (np.bool_,)):
        return bool(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def write_json(path: str | Path, obj) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n")
    return p
