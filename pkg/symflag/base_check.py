from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import csv
import json
import time
import traceback

from .config import ANCHORS, REPORT_SCHEMA
from .errors import BracketingError, FlagError, RootNotFoundError
from .run_config import RunConfig
from .utils import print_verbose, thread_count


@dataclass
class CheckRecord:
    index: int
    name: str
    passed: bool
    values: dict = field(default_factory=dict)

    @property
    def anchor(self) -> str:
        return ANCHORS[self.name]

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "name": self.name,
            "anchor": self.anchor,
            "status": "pass" if self.passed else "fail",
            **self.values,
        }


@dataclass
class Report:
    command: str
    config: dict
    records: list[CheckRecord] = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.records) and all(r.passed for r in self.records)

    def to_dict(self) -> dict:
        failed = [r.index for r in self.records if not r.passed]
        return {
            "schema": REPORT_SCHEMA,
            "command": self.command,
            "config": self.config,
            "records": [r.to_dict() for r in self.records],
            **self.extra,
            "summary": {
                "status": "pass" if self.passed else "fail",
                "checks": len(self.records),
                "failed": failed,
            },
            "wall_time": round(self.wall_time, 6),
        }


class BaseCheck(ABC):
    """
    Runs one command of the CLI: `trial(index)` once per sample, collected into a `Report`.

    Trials run on a thread pool of `thread_count()` workers; `Executor.map`
    keeps the records in trial order.
    """
    name: str = ""
    parallel: bool = True

    def __init__(self, config: RunConfig, verbose: bool = False, debug: bool = False):
        self.config = config
        self.verbose = verbose or config.verbose
        self.debug = debug or config.debug
        self.backend = config.resolved_backend

        if self.debug:
            self.verbose = True
            self._print_verbose("Debug mode enabled.")
            self._print_verbose(f"Config: {config.to_dict()}")

        self.report: Report | None = None

    def _print_verbose(self, message):
        """Helper method to print messages when verbose is enabled."""
        print_verbose(message, self.verbose)

    def prepare(self):
        """Work shared by all trials (building a representation, parsing --g)."""
        pass

    @abstractmethod
    def trial(self, index: int) -> CheckRecord:
        """One sample; `index` seeds its randomness through `derive_seed`."""
        pass

    def trials(self) -> int:
        return self.config.samples

    def extra(self) -> dict:
        """Command specific top level report fields."""
        return {}

    def _safe_trial(self, index: int) -> CheckRecord:
        try:
            record = self.trial(index)
        except (ArithmeticError, FlagError, RootNotFoundError, BracketingError) as e:
            if self.debug:
                traceback.print_exc()
            record = CheckRecord(index, self.name, False, {"error": f"{type(e).__name__}: {e}"})
        if not record.passed:
            self._print_verbose(f"Trial {index} failed: {record.values}")
        return record

    def run(self) -> Report:
        start = time.perf_counter()
        self.prepare()
        count = self.trials()
        workers = min(thread_count(), count) if self.parallel else 1
        self._print_verbose(f"Running {count} trial(s) of {self.config.command} on {workers} thread(s) ...")
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                records = list(executor.map(self._safe_trial, range(count)))
        else:
            records = [self._safe_trial(i) for i in range(count)]
        self.report = Report(self.config.command, self.config.to_dict(), records, self.extra())
        self.report.wall_time = time.perf_counter() - start
        self._print_verbose(f"{sum(r.passed for r in records)} of {count} trial(s) passed")
        return self.report

    def _require_report(self) -> Report:
        if self.report is None:
            raise ValueError("Check not yet run. Run method `.run()` before exporting the report.")
        return self.report

    def to_json(self) -> str:
        """Transform the report to JSON."""
        return json.dumps(self._require_report().to_dict(), indent=4)

    def save_json(self, output_file: str):
        """Save the report to a JSON file."""
        with open(output_file, 'w', encoding='utf-8') as f:
            f.write(self.to_json())
        self._print_verbose(f"Report saved to {output_file}")

    def save_csv(self, output_file: str, rows, header: list[str]):
        """Write raw rows (e.g. (alpha, beta, det) samples) to a CSV file for external plotting."""
        with open(output_file, 'w', newline='', encoding='utf-8') as csvfile:
            csvwriter = csv.writer(csvfile)
            csvwriter.writerow(header)
            for row in rows:
                csvwriter.writerow(row)
        self._print_verbose(f"CSV file created: {output_file}")
