import pytest

from rmsp.domain.repositories import FerRecordRepository, read_plot_data, write_plot_data
from rmsp.domain.schemas import FerRecord


def _record(decoder="ssp-rld", ebn0_db=1.0, errors=3, frames=1000, **extra):
    return FerRecord(
        r=2,
        m=8,
        decoder=decoder,
        ebn0_db=ebn0_db,
        frames=frames,
        frame_errors=errors,
        fer=errors / frames,
        ml_bound_errors=1,
        gamma=83_123.4,
        upsilon_seq=337.0,
        upsilon_par=110.0,
        wall_seconds=1.25,
        seed=2021,
        **extra,
    )


def test_append_and_read_back(tmp_path):
    repo = FerRecordRepository(tmp_path / "runs" / "fer.csv")
    assert repo.list() == []
    repo.add_all([_record(S=3, L=8)])
    repo.add_all([_record(decoder="aut-ssc-fht", P=48, errors=7, phi_bits=51_488)])

    lines = repo.path.read_text().splitlines()
    assert lines[0].startswith("r,m,decoder,S,L")
    assert sum(line.startswith("r,m,") for line in lines) == 1

    first, second = repo.list()
    assert (first.S, first.L, first.P, first.phi_bits) == (3, 8, None, None)
    assert second.decoder == "aut-ssc-fht"
    assert second.P == 48
    assert second.fer == pytest.approx(7e-3)
    assert first.gamma == pytest.approx(83_123.4)


def test_floats_use_scientific_notation(tmp_path):
    repo = FerRecordRepository(tmp_path / "fer.csv")
    repo.add_all([_record(errors=262, frames=10_000)])
    row = repo.path.read_text().splitlines()[1]
    assert "2.62000e-02" in row
    assert "3.37000e+02" in row


def test_plot_data_per_decoder(tmp_path):
    out = tmp_path / "fer.csv"
    records = [
        _record(ebn0_db=1.5, errors=7),
        _record(ebn0_db=1.0, errors=26),
        _record(decoder="ml-oracle", ebn0_db=1.0, errors=19),
    ]
    written = write_plot_data(records, out)
    assert sorted(p.name for p in written) == ["fer.ml-oracle.dat", "fer.ssp-rld.dat"]

    ssp = tmp_path / "fer.ssp-rld.dat"
    assert ssp.read_text().splitlines()[0] == "ebn0 fer"
    assert read_plot_data(ssp) == [(1.0, pytest.approx(0.026)), (1.5, pytest.approx(0.007))]
