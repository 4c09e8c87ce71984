from dataclasses import asdict, dataclass

from .config import DEFAULT_BACKENDS, SUPPORTED_COMMANDS, WITNESS_EPSILON, WITNESS_TOL
from .errors import ConfigError, FlagError
from .flags import ThetaSet
from .scalars import Backend


@dataclass(frozen=True)
class RunConfig:
    """Everything a check needs; `seed` determines every random draw."""
    command: str
    n: int = 2
    theta: tuple[int, ...] | None = None
    backend: Backend | None = None
    samples: int = 10
    seed: int = 0
    tolerance: float = WITNESS_TOL
    epsilon: float = WITNESS_EPSILON
    g: str | None = None
    out: str | None = None
    dump_locus: str | None = None
    verbose: bool = False
    debug: bool = False

    @property
    def check_name(self) -> str:
        return SUPPORTED_COMMANDS[self.command]

    @property
    def resolved_backend(self) -> Backend:
        if self.backend is not None:
            return Backend.parse(self.backend)
        return Backend.parse(DEFAULT_BACKENDS[self.command.split()[0]])

    def theta_set(self, default: tuple[int, ...] = (2,)) -> ThetaSet:
        return ThetaSet(self.n, self.theta or default)

    def validate(self) -> "RunConfig":
        if self.command not in SUPPORTED_COMMANDS:
            raise ConfigError(f"Unknown command {self.command!r}; supported: {', '.join(SUPPORTED_COMMANDS)}")
        minimum = {"rep": 2, "sl2c_witness": 2, "su_witness": 3, "non_maximal": 3}.get(self.check_name, 1)
        if self.n < minimum:
            raise ConfigError(f"{self.command} needs n >= {minimum}, got {self.n}")
        if self.samples < 1:
            raise ConfigError(f"samples must be positive, got {self.samples}")
        if self.tolerance <= 0 or self.epsilon <= 0:
            raise ConfigError(f"tol and epsilon must be positive, got {self.tolerance}, {self.epsilon}")
        if self.theta is not None:
            try:
                ThetaSet(self.n, tuple(sorted(set(self.theta))))
            except FlagError as e:
                raise ConfigError(f"Invalid --theta for n={self.n}: {e}") from None
        try:
            self.resolved_backend
        except ValueError as e:
            raise ConfigError(str(e)) from None
        if self.dump_locus and self.check_name != "sl2c_witness":
            raise ConfigError("--dump-locus only applies to `witness sl2c`")
        return self

    def to_dict(self) -> dict:
        out = asdict(self)
        out["theta"] = list(self.theta) if self.theta is not None else None
        out["backend"] = self.resolved_backend.value
        for key in ("verbose", "debug", "out"):
            out.pop(key)
        return out
