import pytest

from mcskit.parallel import pmap, worker_cap


def test_worker_cap_reads_env(monkeypatch):
    monkeypatch.setenv("MCSKIT_THREADS", "3")
    assert worker_cap() == 3
    monkeypatch.delenv("MCSKIT_THREADS")
    assert worker_cap() >= 1


def test_worker_cap_rejects_garbage(monkeypatch):
    monkeypatch.setenv("MCSKIT_THREADS", "many")
    with pytest.raises(ValueError):
        worker_cap()
    monkeypatch.setenv("MCSKIT_THREADS", "0")
    with pytest.raises(ValueError):
        worker_cap()


def test_pmap_preserves_order(monkeypatch):
    monkeypatch.setenv("MCSKIT_THREADS", "4")
    items = list(range(50))
    assert pmap(lambda v: v * v, items) == [v * v for v in items]


def test_pmap_serial_path(monkeypatch):
    monkeypatch.setenv("MCSKIT_THREADS", "1")
    assert pmap(str, [1, 2, 3]) == ["1", "2", "3"]


def test_pmap_propagates_exceptions(monkeypatch):
    monkeypatch.setenv("MCSKIT_THREADS", "2")

    def boom(v):
        raise RuntimeError("worker died")

    with pytest.raises(RuntimeError):
        pmap(boom, [1, 2])
