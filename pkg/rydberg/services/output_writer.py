"""Record writers and readers: CSV, json-lines and gnuplot data columns.

Numbers are written with 17 significant digits so that values survive a
write/read cycle bit for bit. Lines end with LF whatever the platform.
"""
import csv
import json
from typing import IO, Iterable, List, Optional, Sequence

from rydberg.schemas.output import RECORD_FIELDS, OutputFormat, OutputRecord

_INT_FIELDS = {"n", "l", "m"}
_FLOAT_FIELDS = {"Z", "p", "value", "error"}


def format_number(value: Optional[float]) -> str:
    """17 significant digits; empty for a missing value."""
    if value is None:
        return ""
    return f"{value:.17g}"


def _csv_cells(record: OutputRecord) -> List[str]:
    data = record.model_dump()
    cells = []
    for field in RECORD_FIELDS:
        value = data[field]
        if field in _FLOAT_FIELDS:
            cells.append(format_number(value))
        else:
            cells.append(str(value))
    return cells


class RecordWriter:
    """Stream OutputRecords to a text stream in CSV or json-lines.

    The CSV header is written before the first record, or by close() when no
    record was written.
    """

    def __init__(self, stream: IO[str], output_format: OutputFormat = OutputFormat.CSV):
        self.stream = stream
        self.output_format = OutputFormat(output_format)
        self._csv = csv.writer(stream, lineterminator="\n")
        self._header_written = False

    def _write_header(self) -> None:
        if self.output_format == OutputFormat.CSV and not self._header_written:
            self._csv.writerow(RECORD_FIELDS)
        self._header_written = True

    def write(self, record: OutputRecord) -> None:
        self._write_header()
        if self.output_format == OutputFormat.CSV:
            self._csv.writerow(_csv_cells(record))
        else:
            payload = {field: getattr(record, field) for field in RECORD_FIELDS}
            self.stream.write(json.dumps(payload, ensure_ascii=False) + "\n")
        self.stream.flush()

    def write_all(self, records: Iterable[OutputRecord]) -> int:
        count = 0
        for record in records:
            self.write(record)
            count += 1
        return count

    def close(self) -> None:
        self._write_header()


def write_records(records: Iterable[OutputRecord], stream: IO[str],
                  output_format: OutputFormat = OutputFormat.CSV) -> int:
    """Write records in one go; returns the number written."""
    writer = RecordWriter(stream, output_format)
    count = writer.write_all(records)
    writer.close()
    return count


def _parse_cell(field: str, text: str):
    if field in _INT_FIELDS:
        return int(text)
    if field in _FLOAT_FIELDS:
        return float(text) if text != "" else None
    return text


def read_csv(stream: IO[str]) -> List[OutputRecord]:
    """Parse records written by the CSV writer."""
    reader = csv.DictReader(stream)
    return [OutputRecord(**{field: _parse_cell(field, row[field]) for field in RECORD_FIELDS}) for row in reader]


def read_jsonl(stream: IO[str]) -> List[OutputRecord]:
    """Parse records written by the json-lines writer."""
    return [OutputRecord(**json.loads(line)) for line in stream if line.strip()]


def read_records(stream: IO[str], output_format: OutputFormat = OutputFormat.CSV) -> List[OutputRecord]:
    if OutputFormat(output_format) == OutputFormat.CSV:
        return read_csv(stream)
    return read_jsonl(stream)


def write_columns(header: Sequence[str], rows: Iterable[Sequence[Optional[float]]], stream: IO[str],
                  plot_format: str = "csv", comments: Sequence[str] = ()) -> None:
    """Write figure columns.

    Args:
        header: Column names
        rows: Rows of numbers (None for a missing value)
        stream: Text stream
        plot_format: "csv", or "gnuplot" for a #-prefixed header and
            whitespace-separated columns (missing values become NaN)
        comments: Extra #-lines written before the gnuplot header
    """
    if plot_format == "gnuplot":
        for comment in comments:
            stream.write(f"# {comment}\n")
        stream.write("# " + " ".join(header) + "\n")
        for row in rows:
            stream.write(" ".join(format_number(v) if v is not None else "NaN" for v in row) + "\n")
        return
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(v) for v in row])
