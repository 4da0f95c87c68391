"""Repository layer: CSV persistence of FER records and plot-data series."""

from __future__ import annotations

import csv
from collections import defaultdict
from pathlib import Path
from typing import Dict, Iterable, List, Tuple

from rmsp.domain.schemas import FerRecord

FIELDNAMES: List[str] = list(FerRecord.model_fields)


def _format(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.5e}"
    return str(value)


class FerRecordRepository:
    """Append-only CSV store with a fixed header; one row per FerRecord."""

    def __init__(self, path: Path) -> None:
        self._path = Path(path)

    @property
    def path(self) -> Path:
        return self._path

    def add_all(self, records: Iterable[FerRecord]) -> int:
        """Append records, writing the header first when the file is new or empty."""
        rows = [{k: _format(v) for k, v in rec.model_dump().items()} for rec in records]
        self._path.parent.mkdir(parents=True, exist_ok=True)
        write_header = not self._path.exists() or self._path.stat().st_size == 0
        with self._path.open("a", newline="", encoding="utf-8") as handle:
            writer = csv.DictWriter(handle, fieldnames=FIELDNAMES)
            if write_header:
                writer.writeheader()
            writer.writerows(rows)
        return len(rows)

    def list(self) -> List[FerRecord]:
        if not self._path.exists():
            return []
        with self._path.open(newline="", encoding="utf-8") as handle:
            return [
                FerRecord.model_validate({k: (v if v != "" else None) for k, v in row.items()})
                for row in csv.DictReader(handle)
            ]


def write_plot_data(records: Iterable[FerRecord], out_path: Path) -> List[Path]:
    """
    Write one ``<stem>.<decoder>.dat`` file per decoder next to ``out_path``.

    Each file has an ``ebn0 fer`` header and one whitespace-separated row per point,
    sorted by Eb/N0.
    """
    out_path = Path(out_path)
    series: Dict[str, List[FerRecord]] = defaultdict(list)
    for record in records:
        series[record.decoder].append(record)

    written: List[Path] = []
    for decoder, points in series.items():
        target = out_path.with_name(f"{out_path.stem}.{decoder}.dat")
        lines = ["ebn0 fer"]
        lines += [f"{p.ebn0_db:.2f} {p.fer:.5e}" for p in sorted(points, key=lambda p: p.ebn0_db)]
        target.write_text("\n".join(lines) + "\n", encoding="utf-8")
        written.append(target)
    return written


def read_plot_data(path: Path) -> List[Tuple[float, float]]:
    rows: List[Tuple[float, float]] = []
    for line in Path(path).read_text(encoding="utf-8").splitlines()[1:]:
        if line.strip():
            ebn0, fer = line.split()
            rows.append((float(ebn0), float(fer)))
    return rows
