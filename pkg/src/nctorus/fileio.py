"""JSON/CSV reading and atomic writing for the command line tools."""
from __future__ import annotations

import csv
import io
import json
import os
import sys
import tempfile

from .errors import InputError


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def atomic_write(path, text: str):
    """Write via a temp file in the target directory, then rename over ``path``."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".nct-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(text: str, path=None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        atomic_write(path, text)


def dumps_json(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _fmt(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    # 17 significant digits: exact double round-trip
    return f"{float(v):.16e}"


def dumps_csv(rows, columns) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in columns])
    return buf.getvalue()


def loads_csv(text: str) -> list[dict]:
    """Parse CSV written by ``dumps_csv``; integers stay int, everything else float."""
    reader = csv.DictReader(io.StringIO(text))
    rows = []
    for raw in reader:
        row = {}
        for k, v in raw.items():
            try:
                row[k] = int(v)
            except ValueError:
                try:
                    row[k] = float(v)
                except ValueError:
                    raise InputError(f"non-numeric CSV cell {v!r} in column {k!r}") from None
        rows.append(row)
    return rows


def load_csv(path) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        return loads_csv(fh.read())
