import json

from htt.cli import EXIT_CHECK_FAILURE, EXIT_CONFIG_ERROR, EXIT_OK, main


def test_esd_subcommand(tmp_path, capsys):
    cfg = tmp_path / "esd.cfg"
    cfg.write_text("n_list = 8\nreplicas = 2\n")
    code = main(["esd", "--config", str(cfg), "--out", str(tmp_path / "out"), "--seed", "5"])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "[PASS]" in out
    report = json.loads((tmp_path / "out" / "report_esd.json").read_text())
    assert report["provenance"]["seed"] == 5


def test_check_failure_exit_code(tmp_path):
    cfg = tmp_path / "esd.cfg"
    # impossible threshold forces a hard-check failure
    cfg.write_text("n_list = 8\nreplicas = 1\ntol_esd_identity = -1.0\n")
    code = main(["esd", "--config", str(cfg), "--out", str(tmp_path / "out")])
    assert code == EXIT_CHECK_FAILURE


def test_config_error_exit_code(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("unknown_key = 3\n")
    code = main(["esd", "--config", str(cfg), "--out", str(tmp_path / "out")])
    assert code == EXIT_CONFIG_ERROR


def test_missing_config_file(tmp_path):
    code = main(["esd", "--config", str(tmp_path / "missing.cfg")])
    assert code == EXIT_CONFIG_ERROR


def test_plot_subcommand(tmp_path, capsys):
    from htt.serialize import save_histogram_csv
    import numpy as np

    csv = tmp_path / "h.csv"
    save_histogram_csv(csv, np.array([0.0, 1.0, 2.0]), np.array([0.5, 0.5]))
    svg = tmp_path / "h.svg"
    code = main(["plot", str(csv), "--out", str(svg)])
    assert code == EXIT_OK
    assert svg.exists()
    assert "h.svg" in capsys.readouterr().out


def test_plot_without_inputs():
    assert main(["plot"]) == EXIT_CONFIG_ERROR
