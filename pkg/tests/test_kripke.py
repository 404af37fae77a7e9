import json
import os

from hypothesis import given, settings
import hypothesis.strategies as st
import pytest
from pytest import raises

from teamlib.errors import ModelError
from teamlib.kripke import (
    KripkeModel,
    all_teams,
    enumerate_models,
    identity_model,
    image,
    load_model,
    model_from_dict,
    parse_inline_team,
    preimage,
    read_model_file,
    save_model,
    step_rel,
    subteams,
    write_model_file,
)

EDGE_MODEL = KripkeModel.build(["p"], ["w", "v"], [("w", "v")], {"p": ["v"]})


class TestModel:
    def test_build_fills_missing_valuation(self):
        model = KripkeModel.build(["p", "q"], ["w"], [], {"p": ["w"]})
        assert model.valuation["q"] == frozenset()
        assert model.holds("p", "w")
        assert not model.holds("q", "w")

    def test_duplicate_worlds(self):
        with raises(ModelError, match="duplicate world"):
            KripkeModel.build(["p"], ["w", "w"])

    def test_edge_to_unknown_world(self):
        with raises(ModelError, match="unknown world"):
            KripkeModel.build(["p"], ["w"], [("w", "x")])

    def test_valuation_on_unknown_world(self):
        with raises(ModelError):
            KripkeModel.build(["p"], ["w"], [], {"p": ["x"]})

    def test_valuation_on_undeclared_prop(self):
        with raises(ModelError, match="undeclared"):
            KripkeModel.build(["p"], ["w"], [], {"q": ["w"]})

    def test_team_outside_model(self, two_world_model):
        with raises(ModelError, match="unknown worlds"):
            two_world_model.check_team({"w", "x"})

    def test_sort_follows_world_order(self, two_world_model):
        assert two_world_model.sort({"v", "w"}) == ["w", "v"]

    def test_identity(self, identity_pair, two_world_model):
        assert identity_pair.is_identity()
        assert not two_world_model.is_identity()


class TestImageAlgebra:
    def test_image(self, identity_pair):
        assert image(EDGE_MODEL, {"w"}) == {"v"}
        assert image(EDGE_MODEL, set()) == frozenset()
        assert image(identity_pair, {"a"}) == {"a"}

    def test_preimage(self, identity_pair):
        assert preimage(EDGE_MODEL, {"v"}) == {"w"}
        assert preimage(EDGE_MODEL, set()) == frozenset()
        assert preimage(identity_pair, {"a", "b"}) == {"a", "b"}

    def test_step_rel(self):
        assert step_rel(EDGE_MODEL, {"w"}, {"v"})
        assert not step_rel(EDGE_MODEL, {"w"}, set())
        assert step_rel(EDGE_MODEL, set(), set())
        assert not step_rel(EDGE_MODEL, {"w", "v"}, {"v"})

    def test_unknown_world_rejected(self):
        with raises(ModelError):
            image(EDGE_MODEL, {"x"})

    def test_laws_on_small_models(self, small_models):
        for model in small_models:
            teams = list(all_teams(model))
            for team in teams:
                full = model.image(team)
                assert step_rel(model, team, full) == (team <= model.preimage(full))
                for other in teams:
                    if team <= other:
                        assert model.image(team) <= model.image(other)
                        assert model.preimage(team) <= model.preimage(other)
                    if model.step_rel(team, other):
                        assert other <= full


class TestSubteams:
    def test_order(self, chain_model):
        found = list(subteams(chain_model, {"u", "w", "v"}))
        assert found[0] == frozenset()
        assert found[1:4] == [{"w"}, {"v"}, {"u"}]
        assert found[-1] == {"w", "v", "u"}
        assert len(found) == 8

    def test_nonempty(self, two_world_model):
        assert list(subteams(two_world_model, {"w", "v"}, nonempty=True)) == [
            {"w"},
            {"v"},
            {"w", "v"},
        ]

    def test_teams_of_two_world_model(self, two_world_model):
        assert len(list(all_teams(two_world_model))) == 4


class TestEnumeration:
    def test_empty_domain(self):
        models = list(enumerate_models(0, ("p",)))
        assert len(models) == 1
        assert models[0].worlds == ()

    def test_counts(self):
        assert sum(1 for _ in enumerate_models(1, ("p",))) == 5
        assert sum(1 for _ in enumerate_models(2, ("p",))) == 69
        assert sum(1 for _ in enumerate_models(1, ("p", "q"))) == 1 + 2 * 4

    def test_no_duplicates(self, small_models):
        keys = {(m.worlds, m.edges, tuple(sorted(m.valuation.items()))) for m in small_models}
        assert len(keys) == len(small_models)

    def test_order_is_by_size_then_edges(self, small_models):
        sizes = [len(m.worlds) for m in small_models]
        assert sizes == sorted(sizes)
        two = [m for m in small_models if len(m.worlds) == 2]
        assert two[0].edges == frozenset()
        assert [sorted(m.valuation["p"]) for m in two[:4]] == [[], ["w0"], ["w1"], ["w0", "w1"]]

    def test_negative_bound(self):
        with raises(ModelError):
            list(enumerate_models(-1, ("p",)))


class TestDocuments:
    def test_load_two_world_file(self, models_dir, two_world_model):
        model, teams = read_model_file(os.path.join(models_dir, "two_world_inclusion.json"))
        assert model == two_world_model
        assert teams["T"] == {"w", "v"}

    def test_canonical_document_round_trips(self, models_dir):
        with open(os.path.join(models_dir, "two_world_inclusion.json"), "rb") as f:
            data = f.read()
        model, teams = load_model(data)
        assert save_model(model, teams) == data

    def test_save_then_load(self, chain_model):
        teams = {"T": frozenset({"w", "u"}), "E": frozenset()}
        model, loaded = load_model(save_model(chain_model, teams))
        assert model == chain_model
        assert loaded == teams
        assert model.worlds == ("w", "v", "u")

    def test_write_and_read(self, tmp_path, identity_pair):
        path = str(tmp_path / "m.json")
        write_model_file(path, identity_pair, {"T": frozenset({"b"})})
        model, teams = read_model_file(path)
        assert model.is_identity()
        assert teams == {"T": {"b"}}

    def test_edge_to_undeclared_world(self):
        document = {"props": ["p"], "worlds": ["w"], "edges": [["w", "x"]]}
        with raises(ModelError, match="unknown world"):
            model_from_dict(document)

    def test_malformed_documents(self):
        with raises(ModelError, match="malformed"):
            load_model(b"{not json")
        with raises(ModelError, match="missing required"):
            model_from_dict({"props": ["p"]})
        with raises(ModelError, match="pairs"):
            model_from_dict({"props": [], "worlds": ["w"], "edges": [["w"]]})
        with raises(ModelError, match="duplicate edges"):
            model_from_dict({"props": [], "worlds": ["w"], "edges": [["w", "w"], ["w", "w"]]})
        with raises(ModelError, match="twice"):
            model_from_dict({"props": [], "worlds": ["w"], "teams": {"T": ["w", "w"]}})
        with raises(ModelError, match="team 'T'"):
            model_from_dict({"props": [], "worlds": ["w"], "teams": {"T": ["x"]}})

    @pytest.mark.parametrize(
        "document, message",
        [
            ({"props": "p", "worlds": ["w"]}, "props must be a list of strings"),
            ({"props": ["p"], "worlds": [["w"]]}, "worlds must be a list of strings"),
            ({"props": ["p"], "worlds": ["w"], "valuation": ["p"]}, "valuation must be an object"),
            ({"props": ["p"], "worlds": ["w"], "valuation": {"p": "w"}}, "valuation of 'p'"),
            ({"props": ["p"], "worlds": ["w"], "teams": ["T"]}, "teams must be an object"),
            ({"props": ["p"], "worlds": ["w", "v"], "teams": {"T": "wv"}}, "team 'T'"),
            ({"props": ["p"], "worlds": ["w"], "edges": "ww"}, "pairs"),
            ({"props": ["p"], "worlds": ["w"], "edges": [[1, 2]]}, "pairs"),
        ],
    )
    def test_wrongly_typed_fields(self, document, message):
        with raises(ModelError, match=message):
            model_from_dict(document)

    def test_build_rejects_non_mapping_valuation(self):
        with raises(ModelError, match="valuation must map"):
            KripkeModel.build(["p"], ["w"], [], ["p"])

    def test_document_is_json(self, two_world_model):
        document = json.loads(save_model(two_world_model).decode("utf-8"))
        assert document["valuation"] == {"p": ["v"]}
        assert document["teams"] == {}

    def test_inline_team(self, two_world_model):
        assert parse_inline_team(two_world_model, "w, v") == {"w", "v"}
        assert parse_inline_team(two_world_model, "") == frozenset()
        with raises(ModelError):
            parse_inline_team(two_world_model, "w,x")


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_identity_model_fixes_every_team(data):
    n = data.draw(st.integers(min_value=0, max_value=4))
    worlds = [f"w{i}" for i in range(n)]
    model = identity_model(["p"], worlds)
    team = frozenset(data.draw(st.sets(st.sampled_from(worlds))) if worlds else ())
    assert model.image(team) == team
    assert model.preimage(team) == team
    assert model.step_rel(team, team)
