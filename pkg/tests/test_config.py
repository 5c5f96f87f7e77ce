import pytest

from twobath.config import ConfigError, parse_config

BASE = """
[system]
omega = 5
sigma = 24

[bath1]
gamma_bar = 0.005
beta = 1.0

[bath2]
gamma_bar = 0.25
beta = 1.5
"""


def test_minimal_config_defaults():
    cfg = parse_config(BASE)
    assert cfg.sys.m == 1.0
    assert cfg.bath1.alpha == 0.0
    assert cfg.quad.cutoff == 5000.0
    assert cfg.sweep is None
    assert not cfg.oracle.mc
    assert cfg.output.path is None


def test_missing_key_is_named():
    with pytest.raises(ConfigError, match="'omega'"):
        parse_config(BASE.replace("omega = 5\n", ""))


def test_unknown_key_and_section_rejected():
    with pytest.raises(ConfigError, match="'omgea'"):
        parse_config(BASE + "\n[quadrature]\nomgea = 3\n")
    with pytest.raises(ConfigError, match=r"\[plot\]"):
        parse_config(BASE + "\n[plot]\nx = 1\n")


def test_bad_value_names_key():
    with pytest.raises(ConfigError, match="'beta'"):
        parse_config(BASE.replace("beta = 1.0", "beta = hot"))


def test_syntax_error_reports_line():
    with pytest.raises(ConfigError, match="line"):
        parse_config(BASE + "\nthis is not ini\n")


def test_physical_invariants_revalidated():
    with pytest.raises(ConfigError, match="omega"):
        parse_config(BASE.replace("sigma = 24", "sigma = 30"))
    with pytest.raises(ConfigError):
        parse_config(BASE.replace("beta = 1.0", "beta = -1"))


def test_sweep_forms():
    cfg = parse_config(BASE + "\n[sweep]\nvariable = beta1\nvalues = 0.1, 0.2,0.4\n")
    assert cfg.sweep.values == (0.1, 0.2, 0.4)
    cfg = parse_config(BASE + "\n[sweep]\nvariable = beta2\nstart = 0.01\nstop = 1\ncount = 3\nscale = log\n")
    assert cfg.sweep.values == pytest.approx((0.01, 0.1, 1.0))
    cfg = parse_config(BASE + "\n[sweep]\nvariable = beta2\nstart = 1\nstop = 2\ncount = 3\n")
    assert cfg.sweep.values == pytest.approx((1.0, 1.5, 2.0))


@pytest.mark.parametrize("body", [
    "variable = beta1\nvalues =\n",
    "variable = beta1\nstart = 1\nstop = 2\ncount = 0\n",
    "variable = gamma\nvalues = 1\n",
    "variable = beta1\nvalues = 1\nstart = 2\n",
    "variable = beta1\nstart = 0\nstop = 1\ncount = 3\nscale = log\n",
])
def test_bad_sweeps(body):
    with pytest.raises(ConfigError):
        parse_config(BASE + "\n[sweep]\n" + body)


def test_oracle_and_output_sections():
    cfg = parse_config(BASE + "\n[oracle]\nmc = yes\nmc_n_traj = 10\nmc_seed = 7\n"
                       "\n[output]\npath = out.csv\nprecision = 17\n")
    assert cfg.oracle.mc and cfg.oracle.mc_config.n_traj == 10 and cfg.oracle.mc_config.seed == 7
    assert cfg.output.path == "out.csv" and cfg.output.precision == 17
    with pytest.raises(ConfigError):
        parse_config(BASE + "\n[output]\nprecision = 40\n")
    with pytest.raises(ConfigError):
        parse_config(BASE + "\n[oracle]\nmc_seed = -1\n")
