"""Report serialization, the class-number disk cache and key=value config files."""
from __future__ import annotations

import csv
import io
import json
import logging
import os

from .arith import is_fundamental
from .density import SCHEMA_VERSION, ScanReport

log = logging.getLogger(__name__)

CACHE_SCHEMA = 1
_CACHE_MAGIC = "# twistrank class numbers"


# -- reports -------------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


def report_fields(timing: bool = False) -> list[str]:
    fields = list(ScanReport.FIELDS)
    if timing:
        fields.insert(-1, "runtime_ms")
    return fields


def to_csv(reports, timing: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    fields = report_fields(timing)
    w.writerow(fields)
    for r in reports:
        d = r.as_dict(timing)
        w.writerow([_cell(d[k]) for k in fields])
    return buf.getvalue()


def to_jsonl(reports, timing: bool = False) -> str:
    lines = []
    for r in reports:
        d = r.as_dict(timing)
        d["extras"] = json.loads(json.dumps(d["extras"], sort_keys=True))
        lines.append(json.dumps({k: d[k] for k in report_fields(timing)}))
    return "".join(line + "\n" for line in lines)


def serialize(reports, fmt: str = "csv", timing: bool = False) -> str:
    if fmt == "csv":
        return to_csv(reports, timing)
    if fmt == "jsonl":
        return to_jsonl(reports, timing)
    raise ValueError(f"unknown output format {fmt!r} (expected csv or jsonl)")


def parse_csv(text: str) -> list[dict]:
    """Rows of a report CSV with values decoded to their JSON types."""
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        out = {}
        for k, v in row.items():
            if k in ("label", "bound_kind"):
                out[k] = v
            elif v in ("true", "false"):
                out[k] = v == "true"
            else:
                out[k] = json.loads(v)
        rows.append(out)
    return rows


# -- class-number cache -----------------------------------------------------------


class CacheSchemaError(RuntimeError):
    pass


class ClassNumberCache:
    """Append-only text store of (d, h) pairs.

    First line carries the schema version; each following line is "d h".
    New entries are buffered and appended by `flush`, so only the
    coordinating process writes.
    """

    def __init__(self, path: str):
        self.path = path
        self._data: dict[int, int] = {}
        self._pending: list[tuple[int, int]] = []
        if os.path.exists(path) and os.path.getsize(path) > 0:
            self._load()

    def _load(self) -> None:
        with open(self.path, "rb") as fh:
            lines = fh.read().decode("utf-8", errors="replace").splitlines(keepends=True)
        header = lines[0].rstrip("\n")
        if not header.startswith(_CACHE_MAGIC):
            raise CacheSchemaError(f"{self.path}: not a class-number cache; delete it to rebuild")
        try:
            version = int(header.rsplit("schema_version=", 1)[1])
        except (IndexError, ValueError):
            raise CacheSchemaError(f"{self.path}: unreadable cache header; delete it to rebuild") from None
        if version != CACHE_SCHEMA:
            raise CacheSchemaError(
                f"{self.path}: cache schema_version={version}, expected {CACHE_SCHEMA}; delete the file to rebuild"
            )
        good_bytes = len(lines[0].encode())
        body = lines[1:]
        for i, line in enumerate(body):
            rec = self._parse(line) if line.endswith("\n") else None
            if rec is None:
                if i == len(body) - 1:
                    log.warning("%s: dropping corrupt trailing record %r", self.path, line)
                    with open(self.path, "r+b") as fh:
                        fh.truncate(good_bytes)
                    break
                raise CacheSchemaError(f"{self.path}: corrupt record on line {i + 2}: {line!r}; delete the file to rebuild")
            self._data[rec[0]] = rec[1]
            good_bytes += len(line.encode())

    @staticmethod
    def _parse(line: str):
        parts = line.split()
        if len(parts) != 2:
            return None
        try:
            d, h = int(parts[0]), int(parts[1])
        except ValueError:
            return None
        if d >= 0 or h < 1 or not is_fundamental(d):
            return None
        return d, h

    def __contains__(self, d) -> bool:
        return d in self._data

    def __getitem__(self, d: int) -> int:
        return self._data[d]

    def __setitem__(self, d: int, h: int) -> None:
        if d >= 0 or h < 1:
            raise ValueError(f"cache record d={d}, h={h} out of range")
        if self._data.get(d) == h:
            return
        if d in self._data:
            raise ValueError(f"cache conflict at d={d}: stored {self._data[d]}, new {h}")
        self._data[d] = h
        self._pending.append((d, h))

    def __len__(self) -> int:
        return len(self._data)

    def items(self):
        return self._data.items()

    def as_dict(self) -> dict[int, int]:
        return dict(self._data)

    def flush(self) -> None:
        new = not os.path.exists(self.path) or os.path.getsize(self.path) == 0
        if not self._pending and not new:
            return
        with open(self.path, "a", encoding="utf-8") as fh:
            if new:
                fh.write(f"{_CACHE_MAGIC} schema_version={CACHE_SCHEMA}\n")
            fh.writelines(f"{d} {h}\n" for d, h in self._pending)
        self._pending.clear()


def cache_load(path: str) -> ClassNumberCache:
    return ClassNumberCache(path)


def cache_store(cache: ClassNumberCache) -> None:
    cache.flush()


# -- config ---------------------------------------------------------------------


def read_config(path: str) -> dict[str, str]:
    """key=value lines; '#' starts a comment; keys use underscores or dashes."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{n}: expected key=value, got {line!r}")
            k, v = (s.strip() for s in line.split("=", 1))
            out[k.replace("-", "_")] = v
    return out

