import json

import pytest
from fastapi.testclient import TestClient

from rdfcomplete import Store
from rdfcomplete.service import create_app

from conftest import SCENARIO_QUERY_TEXT


@pytest.fixture
def client(scenario_files, tmp_path):
    store = Store.open(
        scenario_files["graph"],
        statement_file=scenario_files["statements"],
        log_path=tmp_path / "api.log",
    )
    return TestClient(create_app(store))


class TestHealthAndVersion:
    def test_health(self, client):
        response = client.get("/api/v1/health")
        assert response.status_code == 200
        assert response.json() == {"status": "ok"}

    def test_version_reports_store_state(self, client):
        body = client.get("/api/v1/version").json()
        assert body["graph_triples"] == 3
        assert body["statements"] == 3
        assert body["store_version"] == 1


class TestEntityEndpoint:
    def test_scenario_entity(self, client):
        body = client.get("/api/v1/entity/urn:ex:a99").json()
        assert body["entity"] == "urn:ex:a99"
        assert [t["value"] for t in body["facts"]["urn:ex:crew"]] == [
            "urn:ex:ted",
            "urn:ex:tony",
        ]
        assert body["completeness"]["urn:ex:crew"]["complete"] is True

    def test_no_value_entity(self, client):
        body = client.get("/api/v1/entity/urn:ex:ted").json()
        assert body["facts"] == {}
        assert body["completeness"]["urn:ex:child"]["complete"] is True

    def test_unknown_entity_is_empty(self, client):
        body = client.get("/api/v1/entity/urn:ex:stranger").json()
        assert body["facts"] == {} and body["completeness"] == {}

    def test_invalid_iri(self, client):
        assert client.get("/api/v1/entity/not-an-iri").status_code == 400


class TestStatementEndpoints:
    def test_put_creates_statement(self, client):
        response = client.put(
            "/api/v1/statement",
            json={"subject": "urn:ex:toby", "predicate": "urn:ex:child", "author": "fd"},
        )
        assert response.status_code == 201
        body = response.json()
        assert body["id"].startswith("cs-")
        view = client.get("/api/v1/entity/urn:ex:toby").json()
        flag = view["completeness"]["urn:ex:child"]
        assert flag["complete"] is True
        assert flag["provenance"][0]["author"] == "fd"

    def test_delete_statement(self, client):
        response = client.request(
            "DELETE",
            "/api/v1/statement",
            params={"subject": "urn:ex:ted", "predicate": "urn:ex:child"},
        )
        assert response.status_code == 204
        view = client.get("/api/v1/entity/urn:ex:ted").json()
        assert view["completeness"] == {}

    def test_delete_unknown_is_404(self, client):
        response = client.request(
            "DELETE",
            "/api/v1/statement",
            params={"subject": "urn:ex:nobody", "predicate": "urn:ex:p"},
        )
        assert response.status_code == 404

    def test_list_statements(self, client):
        records = client.get("/api/v1/statements").json()
        assert len(records) == 3
        keys = [(r["subject"], r["predicate"]) for r in records]
        assert keys == sorted(keys)

    def test_list_filtered(self, client):
        records = client.get(
            "/api/v1/statements", params={"predicate": "urn:ex:child"}
        ).json()
        assert len(records) == 2


class TestQueryEndpoint:
    def test_scenario_query_is_complete(self, client):
        response = client.post("/api/v1/query", json={"query": SCENARIO_QUERY_TEXT})
        body = response.json()
        assert body["complete"] is True
        assert body["undecided"] is False
        assert len(body["answers"]) == 1
        assert body["answers"][0]["crew"]["value"] == "urn:ex:tony"

    def test_verdict_flips_after_removing_a_statement(self, client):
        client.request(
            "DELETE",
            "/api/v1/statement",
            params={"subject": "urn:ex:ted", "predicate": "urn:ex:child"},
        )
        body = client.post(
            "/api/v1/query", json={"query": SCENARIO_QUERY_TEXT}
        ).json()
        assert body["complete"] is False
        assert body["witness"]["instantiation"]["crew"]["value"] == "urn:ex:ted"

    def test_empty_answer_complete_query(self, client):
        body = client.post(
            "/api/v1/query",
            json={"query": "SELECT ?c WHERE { <urn:ex:ted> <urn:ex:child> ?c }"},
        ).json()
        assert body["answers"] == []
        assert body["complete"] is True

    def test_config_budget_gives_undecided(self, client):
        body = client.post(
            "/api/v1/query",
            json={
                "query": SCENARIO_QUERY_TEXT,
                "config": {"max_steps": 1},
            },
        ).json()
        assert body["undecided"] is True
        assert body["complete"] is None
        assert len(body["answers"]) == 1

    def test_parse_error_is_400(self, client):
        response = client.post("/api/v1/query", json={"query": "FETCH ALL"})
        assert response.status_code == 400

    def test_stats_are_reported(self, client):
        body = client.post("/api/v1/query", json={"query": SCENARIO_QUERY_TEXT}).json()
        assert body["stats"]["steps"] >= 1


class TestSearchEndpoint:
    def test_search_hits(self, client):
        hits = client.get("/api/v1/search", params={"q": "a99"}).json()
        assert hits == [{"iri": "urn:ex:a99", "label": None}]

    def test_empty_query(self, client):
        assert client.get("/api/v1/search", params={"q": ""}).json() == []


class TestStaticUi:
    def test_built_frontend_is_served_at_root(self, scenario_files):
        from rdfcomplete.service.app import DEFAULT_UI_DIR

        if not DEFAULT_UI_DIR.is_dir():
            pytest.skip("frontend not built")
        store = Store.open(scenario_files["graph"])
        client = TestClient(create_app(store))
        page = client.get("/")
        assert page.status_code == 200
        assert "completeness browser" in page.text
        # API routes keep precedence over the static mount
        assert client.get("/api/v1/health").json() == {"status": "ok"}


class TestPersistenceThroughApi:
    def test_mutations_survive_restart(self, scenario_files, tmp_path):
        log = tmp_path / "svc.log"
        store = Store.open(scenario_files["graph"], log_path=log)
        client = TestClient(create_app(store))
        client.put(
            "/api/v1/statement",
            json={"subject": "urn:ex:a99", "predicate": "urn:ex:crew"},
        )
        listing = client.get("/api/v1/statements").json()

        reopened = Store.open(scenario_files["graph"], log_path=log)
        client2 = TestClient(create_app(reopened))
        assert client2.get("/api/v1/statements").json() == listing
