import json
import os
import sys

import numpy as np

from .config import THREADS_ENV
from .errors import ConfigError, FieldError, MatrixFormatError
from .matrices import Mat
from .scalars import Backend, parse_scalar


def print_verbose(msg, verbose=False):
    """Progress messages go to stderr so reports on stdout stay machine readable."""
    if verbose:
        print(msg, file=sys.stderr)


def derive_seed(seed: int, index: int) -> int:
    """Independent per-trial seed, so trials give the same result whatever order they run in."""
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])


def thread_count() -> int:
    """Worker threads, capped by $SYMFLAG_THREADS."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return min(4, os.cpu_count() or 1)
    try:
        count = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if count < 1:
        raise ConfigError(f"{THREADS_ENV} must be at least 1, got {count}")
    return count


def read_matrix_file(file_path: str, backend: Backend | str = Backend.EXACT) -> Mat:
    """
    Reads a matrix from `file_path`.

    JSON files hold a `Mat.to_dict` document; anything else is read as one row
    per line with whitespace separated entries such as `1/2` or `3-2*sqrt(2)`.
    """
    backend = Backend.parse(backend)
    with open(file_path, 'r', encoding='utf-8') as opened_file:
        text = opened_file.read()
    if file_path.endswith('.json'):
        try:
            document = json.loads(text)
        except json.JSONDecodeError as e:
            raise MatrixFormatError(f"Invalid JSON in {file_path}: {e}") from None
        return Mat.from_dict(document).to_backend(backend)
    lines = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith('#')]
    if not lines:
        raise MatrixFormatError(f"No matrix rows in {file_path}")
    try:
        rows = [[parse_scalar(entry, backend) for entry in line] for line in lines]
    except FieldError as e:
        raise MatrixFormatError(f"{file_path}: {e}") from None
    return Mat.from_rows(rows, backend)
