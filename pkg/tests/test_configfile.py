import pytest

from leachsim import (
    ConfigError,
    load_scenario,
    parse_config,
    parse_config_document,
    render_config,
)

FULL_DOC = """
# standalone document, no preset
[grid]
nx = 9
nz = 11
dx = 1 cm
dz = 1 cm

[transport]
D = 0.02 m2/a
v = 0.01 cm/day
theta = 0.3
C0 = 675 mg/L
background = 0 mg/L

[species]
name = Cl-
charge = anion
R = 1

[boundary]
sides = neumann_zero_flux
bottom = zero_gradient

[time]
dt = 0.01 day
t_end = 100 day
snapshots = 1 day, 50 day, 100 day
scheme = upwind
stability_policy = warn
"""


class TestParsing:
    def test_full_document(self):
        cfg = parse_config(FULL_DOC)
        assert cfg.grid.nx == 9 and cfg.grid.nz == 11
        assert cfg.params.d == pytest.approx(0.02 * 1e4 / 365, rel=1e-15)
        assert cfg.params.v == 0.01
        assert cfg.params.c0 == 675.0
        assert cfg.params.species.name == "Cl-"
        assert cfg.snapshot_times == (1.0, 50.0, 100.0)
        assert cfg.bc.sides == "neumann_zero_flux"

    def test_minimal_preset_reference(self):
        cfg = parse_config("[transport]\npreset = landfill-cl\n")
        assert cfg == load_scenario("landfill-cl")

    def test_preset_with_overrides(self):
        text = "[transport]\npreset = landfill-cl\nv = 0.05 cm/day\n\n[time]\ndt = 0.5 day\n"
        cfg = parse_config(text)
        base = load_scenario("landfill-cl")
        assert cfg.params.v == 0.05
        assert cfg.dt == 0.5
        assert cfg.params.c0 == base.params.c0
        assert cfg.grid == base.grid

    def test_species_from_rho_kd(self):
        text = FULL_DOC.replace("R = 1", "rho = 1.5e9 mg/m3\nkd = 2e-10 m3/mg")
        cfg = parse_config(text)
        assert cfg.params.retardation == pytest.approx(2.0)

    def test_output_section(self):
        doc = parse_config_document(
            "[transport]\npreset = landfill-cl\n\n[output]\ncsv = out.csv\nsvg = out.svg\n"
        )
        assert doc.csv_path == "out.csv" and doc.svg_path == "out.svg"


class TestErrors:
    def test_missing_v_without_preset_names_the_key(self):
        text = FULL_DOC.replace("v = 0.01 cm/day\n", "")
        with pytest.raises(ConfigError, match=r"\[transport\] v"):
            parse_config(text)

    def test_unknown_key_is_an_error(self):
        with pytest.raises(ConfigError, match=r"\[transport\] vj"):
            parse_config("[transport]\npreset = landfill-cl\nvj = 1 cm/day\n")

    def test_unknown_section_is_an_error(self):
        with pytest.raises(ConfigError, match=r"\[turbulence\]"):
            parse_config("[turbulence]\nmodel = none\n")

    def test_missing_unit_rejected(self):
        with pytest.raises(ConfigError, match="unit"):
            parse_config("[transport]\npreset = landfill-cl\nv = 0.01\n")

    def test_wrong_unit_rejected(self):
        with pytest.raises(ConfigError, match=r"\[transport\] D"):
            parse_config("[transport]\npreset = landfill-cl\nD = 0.02 cm/day\n")

    def test_duplicate_key_rejected(self):
        with pytest.raises(ConfigError, match="twice"):
            parse_config("[transport]\npreset = landfill-cl\nv = 1 cm/day\nv = 2 cm/day\n")

    def test_duplicate_section_rejected(self):
        with pytest.raises(ConfigError, match="repeated"):
            parse_config("[grid]\nnx = 9\n\n[grid]\nnz = 11\n")

    def test_unknown_preset_points_at_the_key(self):
        with pytest.raises(ConfigError, match="preset"):
            parse_config("[transport]\npreset = bogus\n")

    def test_pair_line_outside_section(self):
        with pytest.raises(ConfigError, match="before any"):
            parse_config("nx = 9\n")

    def test_non_integer_node_count(self):
        with pytest.raises(ConfigError, match=r"\[grid\] nx"):
            parse_config("[transport]\npreset = landfill-cl\n\n[grid]\nnx = many\n")

    def test_invariant_violations_surface_as_config_errors(self):
        text = "[transport]\npreset = landfill-cl\n\n[time]\ndt = 200 day\n"
        with pytest.raises(ConfigError, match="dt"):
            parse_config(text)


class TestRenderRoundTrip:
    @pytest.mark.parametrize("name", ["landfill-cl", "landfill-k"])
    def test_presets_round_trip_exactly(self, name):
        cfg = load_scenario(name)
        assert parse_config(render_config(cfg)) == cfg

    def test_render_is_idempotent_after_one_trip(self):
        cfg = parse_config(FULL_DOC)
        text1 = render_config(cfg)
        text2 = render_config(parse_config(text1))
        assert text1 == text2

    def test_rho_kd_species_round_trips(self):
        text = FULL_DOC.replace("R = 1", "rho = 1.5e9 mg/m3\nkd = 2e-10 m3/mg")
        cfg = parse_config(text)
        assert parse_config(render_config(cfg)) == cfg
