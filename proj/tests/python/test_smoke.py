import math

import pytest

import mdpcheck

TRAP = """{
  "states": 5,
  "initial": 0,
  "labels": {"goal": [4]},
  "transitions": [
    [[[1, "1"]], [[2, 1]]],
    [[[4, "0.1"], [3, "9/10"]]],
    [[[4, "1/20"], [3, "1/20"], [0, "9/10"]]],
    [[[3, 1]]],
    [[[4, 1]]]
  ]
}"""


@pytest.mark.parametrize("algorithm", ["pi", "lp", "pi:topo=1", "lp:bounds=warm,objective=init,eq=1"])
def test_hard_family_is_exact(algorithm):
    model = mdpcheck.gen_hard_mn(20)
    assert mdpcheck.solve(model, "reach:min:goal", algorithm)["exact"][0] == "1/3"
    assert mdpcheck.solve(model, "reach:max:goal", algorithm)["exact"][0] == "2/3"


def test_naive_vi_is_off_on_hard_family():
    model = mdpcheck.gen_hard_mn(20)
    result = mdpcheck.solve(model, "reach:min:goal", "vi:eps=1e-6")
    assert result["soundness"] == "unsound"
    assert abs(result["values"][0] - 1 / 3) / (1 / 3) > 1e-3


def test_ovi_bounds_contain_value():
    model = mdpcheck.gen_hard_mn(8)
    result = mdpcheck.solve(model, "reach:max:goal", "ovi:eps=1e-6")
    assert result["certified"]
    assert result["lower"][0] <= 2 / 3 <= result["upper"][0]


def test_trap_document_and_policy_iteration():
    model = mdpcheck.parse_model(TRAP)
    assert model == mdpcheck.gen_pi_trap("1/10")
    assert model.transitions(1, 0) == [(3, "9/10"), (4, "1/10")]
    exact = mdpcheck.solve(model, "reach:max:goal", "pi")
    assert exact["exact"][0] == "1/2"
    assert exact["policy"][0] == 1
    trapped = mdpcheck.solve(mdpcheck.gen_pi_trap("1e-6"), "reach:max:goal", "pi:evaluator=iterative,eps=1e-6", initial_policy=[0] * 5)
    assert 0.09 <= trapped["values"][0] <= 0.11


def test_round_trip_through_file(tmp_path):
    model = mdpcheck.gen_random_mdp(seed=7, states=12, actions=3, max_reward=4)
    path = tmp_path / "random.json"
    mdpcheck.save_model(model, str(path))
    assert mdpcheck.load_model(str(path)) == model
    assert mdpcheck.parse_model(model.to_json()).to_json() == model.to_json()


def test_infinite_reward_is_reported():
    text = '{"states": 1, "initial": 0, "rewards": {"0": "1"}, "transitions": [[[[0, 1]]]]}'
    result = mdpcheck.solve(mdpcheck.parse_model(text), "reward:max", "lp")
    assert math.isinf(result["values"][0])
    assert result["exact"][0] == "inf"


def test_qualitative_sets():
    model = mdpcheck.gen_pi_trap("1/10")
    assert mdpcheck.prob0(model, "goal", "max") == [3]
    assert mdpcheck.prob1(model, "goal", "max") == [4]


def test_errors_carry_codes():
    with pytest.raises(mdpcheck.ParseError):
        mdpcheck.parse_model('{"states": 1, "initial": 0}')
    with pytest.raises(mdpcheck.MdpError, match="BadParameter"):
        mdpcheck.gen_hard_mn(1)
    with pytest.raises(mdpcheck.MdpError):
        mdpcheck.solve(mdpcheck.gen_hard_mn(3), "reach:max:nolabel")


def test_classification_and_bench():
    assert mdpcheck.classify(0.247, "1/3") == "incorrect"
    assert mdpcheck.classify(5e-9, "1e-9") == "correct"
    assert mdpcheck.classify(0.5, "1/2") == "correct"
    assert mdpcheck.classify(math.inf, "inf") == "correct"
    assert mdpcheck.classify(0.5, None) == "no-reference"
    csv = mdpcheck.run_suite("gen:hard-mn:4 reach:min:goal pi 1/3\ngen:hard-mn:4 reach:min:goal vi 1/3\n")
    lines = csv.strip().split("\n")
    assert lines[0] == "model,objective,algorithm,config,status,value,time_ms,iterations"
    assert [line.split(",")[4] for line in lines[1:]] == ["no-reference", "correct", "correct"]
