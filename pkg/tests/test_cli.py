import pytest

from loopdetect.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_simulate_rho_detects(capsys):
    code, out, _ = run(capsys, "simulate", "--mu", "0", "--lambda", "3", "--seed", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# seed=1"
    assert lines[1] == "hop,node_id_hex,tortoise_hex,snapshot,outcome"
    assert lines[-1].endswith(",detected(7)")
    assert len(lines) == 2 + 7


def test_simulate_chain_terminates(capsys):
    code, out, _ = run(capsys, "simulate", "--chain", "5", "--seed", "1")
    assert code == 0
    assert out.splitlines()[-1].endswith(",terminated(5)")


def test_simulate_budget_exhaustion_exit_code(capsys):
    code, out, _ = run(
        capsys, "simulate", "--mu", "0", "--lambda", "3", "--max-hops", "2"
    )
    assert code == 2
    assert out.splitlines()[-1].endswith(",budget_exhausted")


def test_simulate_is_deterministic(capsys):
    first = run(capsys, "simulate", "--mu", "2", "--lambda", "5", "--seed", "9")
    second = run(capsys, "simulate", "--mu", "2", "--lambda", "5", "--seed", "9")
    assert first == second


def test_simulate_seed_changes_ids(capsys):
    _, out_a, _ = run(capsys, "simulate", "--mu", "0", "--lambda", "2", "--seed", "1")
    _, out_b, _ = run(capsys, "simulate", "--mu", "0", "--lambda", "2", "--seed", "2")
    assert out_a != out_b


@pytest.mark.parametrize(
    "argv",
    [
        ["simulate"],
        ["simulate", "--mu", "0"],
        ["simulate", "--chain", "3", "--mu", "1", "--lambda", "2"],
        ["simulate", "--mu", "-1", "--lambda", "2"],
        ["simulate", "--chain", "0"],
        ["latency", "--mu", "2"],
        ["latency", "--mu", "0", "--lambda", "0"],
        ["collisions", "--bits", "0"],
        ["collisions", "--lengths", "0"],
        ["nonsense"],
        [],
    ],
)
def test_usage_errors_exit_64(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 64


def test_collisions_single_cell(capsys):
    code, out, _ = run(capsys, "collisions", "--bits", "32", "--lengths", "8192")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "id_bits,path_length,p_exact,p_approx"
    p_exact = float(lines[1].split(",")[2])
    assert 0.005 <= p_exact <= 0.015


def test_collisions_default_grid(capsys):
    code, out, _ = run(capsys, "collisions")
    assert code == 0
    assert len(out.splitlines()) == 1 + 4 * 13


def test_collisions_deterministic(capsys):
    assert run(capsys, "collisions") == run(capsys, "collisions")


def test_latency_row(capsys):
    code, out, _ = run(capsys, "latency", "--mu", "2", "--lambda", "4", "--ttl", "255")
    assert code == 0
    assert out == "mu,lambda,brent_hop,ttl_hop,ratio\n2,4,8,255,31.875\n"


def test_latency_ttl_favorable_case(capsys):
    code, out, _ = run(capsys, "latency", "--mu", "0", "--lambda", "255", "--ttl", "255")
    assert code == 0
    assert out.splitlines()[1] == "0,255,511,255,0.499021526419"


def test_header_encode_zeros(capsys):
    code, out, _ = run(capsys, "header", "encode")
    assert code == 0
    assert out == "0" * 28 + "\n"


def test_header_encode_pinned(capsys):
    code, out, _ = run(
        capsys,
        "header", "encode",
        "--tortoise", "0x0102030405060708",
        "--hops", "0x0A0B",
        "--nonce", "0x0C0D0E0F",
    )
    assert code == 0
    assert out == "0102030405060708" + "0a0b" + "0c0d0e0f" + "\n"


def test_header_decode_fields(capsys):
    code, out, _ = run(capsys, "header", "decode", "0102030405060708090a0b0c0d0e")
    assert code == 0
    assert out == "tortoise=0x0102030405060708\nhops=0x090a\nnonce=0x0b0c0d0e\n"


def test_header_decode_truncated_exits_65(capsys):
    code, _, err = run(capsys, "header", "decode", "0102")
    assert code == 65
    assert err


def test_header_decode_bad_hex_exits_65(capsys):
    code, _, err = run(capsys, "header", "decode", "zz" * 14)
    assert code == 65
    assert err


def test_header_encode_out_of_range_exits_64(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["header", "encode", "--hops", "0x10000"])
    assert exc.value.code == 64


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "trace.csv"
    code, out, _ = run(
        capsys, "simulate", "--mu", "0", "--lambda", "1", "--seed", "4",
        "--out", str(target),
    )
    assert code == 0
    assert out == ""
    text = target.read_text()
    assert text.startswith("# seed=4\nhop,")
    assert text.rstrip().endswith("detected(1)")


def test_roundtrip_encode_decode_via_cli(capsys):
    _, hex_out, _ = run(
        capsys,
        "header", "encode",
        "--tortoise", "12345678901234567890",
        "--hops", "513",
        "--nonce", "42",
    )
    code, out, _ = run(capsys, "header", "decode", hex_out.strip())
    assert code == 0
    assert "tortoise=0x" + format(12345678901234567890, "016x") in out
    assert "hops=0x0201" in out
    assert "nonce=0x0000002a" in out
