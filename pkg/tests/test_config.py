import pytest

from fracspectral.config import (
    DataConfig,
    NumericsConfig,
    ProblemConfig,
    RunConfig,
    emit_config,
    example_config,
    load_config,
    parse_config,
    save_config,
)
from fracspectral.errors import ConfigError

FULL = """
problem:
  k: 2
  m: 0.5
  alpha: 1.25
phi:
  kind: bump
  q: 6
  coefficients: [1, 0.5]
psi:
  kind: zero
numerics:
  quadrature_nodes: 120
  modes: 8
  truncation: 6
  grid: [5, 7]
  scheme: plain
output:
  directory: out
  format: json
"""


def test_parse_full_config():
    config = parse_config(FULL)
    assert config.problem == ProblemConfig(k=2, m=0.5, alpha=1.25)
    assert config.phi == DataConfig(kind="bump", q=6, coefficients=[1.0, 0.5])
    assert config.psi.kind == "zero"
    assert config.numerics == NumericsConfig(quadrature_nodes=120, modes=8, truncation=6, grid=[5, 7], scheme="plain")
    assert config.output.format == "json"


def test_short_form():
    config = parse_config("k: 1\nm: 0\nalpha: 1.5\nphi: zero\npsi: {q: 4}\n")
    assert config.problem.m == 0.0 and isinstance(config.problem.m, float)
    assert config.phi.kind == "zero"
    assert config.psi.kind == "bump" and config.psi.q == 4
    assert config.numerics == NumericsConfig()


def test_emit_then_parse():
    config = example_config()
    assert parse_config(emit_config(config)) == config


def test_save_and_load(tmp_path):
    path = tmp_path / "nested" / "run.yaml"
    save_config(example_config(), str(path))
    assert load_config(str(path)) == example_config()
    with pytest.raises(ConfigError):
        save_config(example_config(), str(tmp_path / "run.txt"))
    with pytest.raises(ConfigError, match="not found"):
        load_config(str(tmp_path / "missing.yaml"))


@pytest.mark.parametrize(
    "text,field",
    [
        ("k: 1\nm: 0.5\nalpha: 2.5\n", "problem.alpha"),
        ("k: 2\nm: 1.0\nalpha: 1.5\n", "problem.m"),
        ("k: 9\nm: 0\nalpha: 1.5\n", "problem.k"),
        ("k: 1\nm: 0\nalpha: 1.5\npsi: {q: 3}\n", "psi.q"),
        ("k: 1\nm: 0\nalpha: 1.5\nnumerics: {modes: 10, quadrature_nodes: 30}\n", "numerics.quadrature_nodes"),
        ("k: 1\nm: 0\nalpha: 1.5\nnumerics: {modes: 4, truncation: 5, quadrature_nodes: 40}\n", "numerics.truncation"),
        ("k: 1\nm: 0\nalpha: 1.5\nnumerics: {scheme: simpson}\n", "numerics.scheme"),
        ("k: 1\nm: 0\nalpha: 1.5\noutput: {format: xml}\n", "output.format"),
        ("k: 1\nm: 0\nalpha: 1.5\nphi: {kind: eigenfunction, index: 12}\n", "phi.index"),
        ("k: 1\nm: 0\nalpha: 1.5\nphi: spline\n", "phi.kind"),
    ],
)
def test_validation_names_the_field(text, field):
    with pytest.raises(ConfigError, match=field.replace(".", r"\.")):
        parse_config(text)


def test_structural_errors():
    with pytest.raises(ConfigError, match="invalid config"):
        parse_config("k: 1\nm: 0\nalpha: 1.5\nunknown: 3\n")
    with pytest.raises(ConfigError, match="invalid config"):
        parse_config("phi: zero\n")
    with pytest.raises(ConfigError, match="mapping"):
        parse_config("- 1\n- 2\n")
    with pytest.raises(ConfigError, match=r"^\d+:\d+: "):
        parse_config("k: [1, 2\nm: 0\n")


def test_validate_returns_self():
    config = RunConfig(problem=ProblemConfig(k=1, m=0.5, alpha=1.5))
    assert config.validate() is config
