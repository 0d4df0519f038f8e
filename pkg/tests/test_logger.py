from src.core.logger import RunLogger
from src.core.report import CheckReport


def test_run_round_trip(tmp_path):
    store = RunLogger(str(tmp_path / "logs" / "runs.db"))
    run_id = store.start_run("universe", seed=3, options={"level": 2})
    ok = CheckReport("extensionality")
    ok.tick(16)
    bad = CheckReport("union")
    bad.expect(False, u="<[],[]>")
    store.log_check(run_id, ok)
    store.log_check(run_id, bad)
    store.end_run(run_id, "fail")

    (run,) = store.get_runs()
    assert run["id"] == run_id
    assert run["command"] == "universe"
    assert run["seed"] == 3
    assert run["status"] == "fail"
    assert run["end_time"] is not None

    checks = store.get_checks(run_id)
    assert [c["name"] for c in checks] == ["extensionality", "union"]
    assert checks[0]["checked"] == 16
    failed = store.get_checks(run_id, failed_only=True)
    assert [c["name"] for c in failed] == ["union"]


def test_runs_filter_and_clear(tmp_path):
    store = RunLogger(str(tmp_path / "runs.db"))
    for command in ("parse", "table", "table"):
        store.end_run(store.start_run(command), "pass")
    assert len(store.get_runs("table")) == 2
    assert [r["command"] for r in store.get_runs(limit=1)] == ["table"]
    assert store.get_database_size() > 0
    store.clear_runs()
    store.vacuum_database()
    assert store.get_runs() == []
