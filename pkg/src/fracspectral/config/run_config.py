from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from dacite import Config, DaciteError, from_dict
from loguru import logger

from fracspectral.errors import ConfigError

DATA_KINDS = ("zero", "bump", "eigenfunction")
SCHEMES = ("plain", "product")
FORMATS = ("csv", "json")
MAX_K = 8


@dataclass
class ProblemConfig:
    k: int
    m: float
    alpha: float


@dataclass
class DataConfig:
    """Boundary data descriptor: zero, a polynomial bump [y(1-y)]^q P(y), or scale * Y_index."""

    kind: str = "zero"
    q: Optional[int] = None
    coefficients: List[float] = field(default_factory=lambda: [1.0])
    index: int = 0
    scale: float = 1.0


@dataclass
class NumericsConfig:
    quadrature_nodes: int = 200
    modes: int = 10
    truncation: int = 10
    grid: List[int] = field(default_factory=lambda: [11, 11])
    scheme: str = "product"


@dataclass
class OutputConfig:
    directory: str = "./fracspectral_out"
    format: str = "csv"


@dataclass
class RunConfig:
    problem: ProblemConfig
    phi: DataConfig = field(default_factory=DataConfig)
    psi: DataConfig = field(default_factory=DataConfig)
    numerics: NumericsConfig = field(default_factory=NumericsConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    def validate(self) -> "RunConfig":
        p = self.problem
        if not 1 <= p.k <= MAX_K:
            raise ConfigError(f"problem.k: k must lie in [1, {MAX_K}], got {p.k}")
        if not 0.0 <= p.m < p.k or (p.m > 0 and float(p.m).is_integer()):
            raise ConfigError(f"problem.m: m must satisfy 0 <= m < k and m not a positive integer, got m={p.m}, k={p.k}")
        if not 1.0 < p.alpha < 2.0:
            raise ConfigError(f"problem.alpha: order bound 1 < alpha < 2 violated, got alpha={p.alpha}")
        for name in ("phi", "psi"):
            self._validate_data(name, getattr(self, name))

        n = self.numerics
        if n.modes < 1:
            raise ConfigError(f"numerics.modes: must be positive, got {n.modes}")
        if n.quadrature_nodes < 4 * n.modes:
            raise ConfigError(f"numerics.quadrature_nodes: {n.modes} modes need at least {4 * n.modes} nodes, got {n.quadrature_nodes}")
        if not 1 <= n.truncation <= n.modes:
            raise ConfigError(f"numerics.truncation: must lie in [1, modes={n.modes}], got {n.truncation}")
        if len(n.grid) != 2 or min(n.grid) < 1:
            raise ConfigError(f"numerics.grid: expected two positive sizes [nx, ny], got {n.grid}")
        if n.scheme not in SCHEMES:
            raise ConfigError(f"numerics.scheme: expected one of {SCHEMES}, got '{n.scheme}'")
        if self.output.format not in FORMATS:
            raise ConfigError(f"output.format: expected one of {FORMATS}, got '{self.output.format}'")
        return self

    def _validate_data(self, name: str, data: DataConfig):
        if data.kind not in DATA_KINDS:
            raise ConfigError(f"{name}.kind: expected one of {DATA_KINDS}, got '{data.kind}'")
        if data.kind == "bump":
            least = 2 * self.problem.k + 2
            if data.q is None or data.q < least:
                raise ConfigError(f"{name}.q: bump data needs q >= 2k + 2 = {least}, got {data.q}")
            if not data.coefficients:
                raise ConfigError(f"{name}.coefficients: bump polynomial needs at least one coefficient")
        if data.kind == "eigenfunction" and not 0 <= data.index < self.numerics.truncation:
            raise ConfigError(f"{name}.index: eigenfunction index must lie in [0, truncation={self.numerics.truncation}), got {data.index}")

    @classmethod
    def from_dict(cls, raw: Dict[str, Any]) -> "RunConfig":
        data = _normalize(raw)
        try:
            config = from_dict(data_class=cls, data=data, config=Config(strict=True, type_hooks={float: float}))
        except (DaciteError, TypeError, ValueError) as e:
            raise ConfigError(f"invalid config: {e}") from e
        return config.validate()

    @classmethod
    def from_yaml(cls, path: str) -> "RunConfig":
        if not Path(path).exists():
            raise ConfigError(f"Config file not found at {path}")
        return parse_config(Path(path).read_text(encoding="utf-8"))

    def to_yaml(self, path: str):
        if not path.endswith((".yaml", ".yml")):
            raise ConfigError("path must end with .yaml")
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(emit_config(self), encoding="utf-8")
        logger.info(f"Saved config to {path}")


def _normalize(raw: Any) -> Dict[str, Any]:
    # accepts the flat short form {k, m, alpha, phi: zero, psi: {q: 4}}
    if not isinstance(raw, dict):
        raise ConfigError(f"config root must be a mapping, got {type(raw).__name__}")
    raw = dict(raw)
    flat = {key: raw.pop(key) for key in ("k", "m", "alpha") if key in raw}
    if flat:
        raw["problem"] = {**raw.get("problem", {}), **flat}
    for name in ("phi", "psi"):
        data = raw.get(name)
        if isinstance(data, str):
            raw[name] = {"kind": data}
        elif isinstance(data, dict) and "kind" not in data:
            raw[name] = {"kind": "bump" if "q" in data else "zero", **data}
    return raw


def parse_config(text: str) -> RunConfig:
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        where = f"{mark.line + 1}:{mark.column + 1}" if mark is not None else "?:?"
        raise ConfigError(f"{where}: {getattr(e, 'problem', None) or e}") from e
    return RunConfig.from_dict(raw if raw is not None else {})


def emit_config(config: RunConfig) -> str:
    return yaml.safe_dump(asdict(config), sort_keys=False)


def example_config() -> RunConfig:
    return RunConfig(
        problem=ProblemConfig(k=1, m=0.5, alpha=1.5),
        phi=DataConfig(kind="zero"),
        psi=DataConfig(kind="bump", q=4, coefficients=[1.0]),
    )


def load_config(path: str) -> RunConfig:
    return RunConfig.from_yaml(path)


def save_config(config: RunConfig, path: str):
    config.to_yaml(path)
