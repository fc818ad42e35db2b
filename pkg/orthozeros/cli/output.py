"""
CSV and JSON artifacts.

Artifacts are rendered in memory and written only once every computation of
a run has succeeded, so a failing run leaves no partial files behind.
"""

import csv
import io
import json
import logging
import os
import tempfile
from collections.abc import Iterable, Sequence
from pathlib import Path

from orthozeros.errors import ConfigParseError
from orthozeros.utils.helpers import fmt, get_data_path

logger = logging.getLogger(__name__)

SCHEMA_PATH = get_data_path('schema', 'summary.schema.json')


def render_csv(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    """RFC-4180 CSV with CRLF line ends; floats use their shortest round-trip form."""
    buffer = io.StringIO(newline='')
    writer = csv.writer(buffer, lineterminator='\r\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow(['' if v is None else v if isinstance(v, str) else fmt(v) for v in row])
    return buffer.getvalue()


def render_json(summary: dict) -> str:
    return json.dumps(summary, indent=2, sort_keys=True, allow_nan=False) + '\n'


def check_writable(out_dir: Path | str) -> Path:
    """Create the output directory if needed and check it accepts files.

    Raises:
        ConfigParseError: the directory cannot be created or written
    """
    path = Path(out_dir)
    try:
        path.mkdir(parents=True, exist_ok=True)
        with tempfile.NamedTemporaryFile(dir=path, prefix='.orthozeros-probe-'):
            pass
    except OSError as e:
        raise ConfigParseError(f"output directory {path} is not writable: {e}") from e
    return path


class Artifacts:
    """Named text artifacts collected during a run."""

    def __init__(self) -> None:
        self._files: dict[str, str] = {}

    def add_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[object]]) -> None:
        self._files[name] = render_csv(header, rows)

    def add_json(self, name: str, summary: dict) -> None:
        self._files[name] = render_json(summary)

    def names(self) -> list[str]:
        return list(self._files)

    def text(self, name: str) -> str:
        return self._files[name]

    def write(self, out_dir: Path | str) -> list[Path]:
        """Write every artifact; each file is replaced atomically."""
        path = Path(out_dir)
        written = []
        for name, text in self._files.items():
            target = path / name
            fd, tmp = tempfile.mkstemp(dir=path, prefix=f".{name}.")
            with os.fdopen(fd, 'w', newline='') as f:
                f.write(text)
            os.replace(tmp, target)
            written.append(target)
            logger.info(f"Wrote {target}")
        return written

    def emit(self, out_dir: str, stream: io.TextIOBase) -> None:
        """Write to ``out_dir``, or print the CSV artifacts when no directory is set."""
        if out_dir:
            self.write(out_dir)
            return
        for name, text in self._files.items():
            if name.endswith('.csv'):
                stream.write(text)
