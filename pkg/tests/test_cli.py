import json
import subprocess
import sys

import pytest

from partyapproval.axioms import AxiomVerdict, validate_witness
from partyapproval.cli import main
from partyapproval.instances import paper_example
from partyapproval.model import parse_committee, parse_election, serialize_election


@pytest.fixture
def files(tmp_path):
    out = {}
    for id_ in ('ex1', 'ex2', 'ex3'):
        path = tmp_path / f'{id_}.ballots'
        path.write_text(serialize_election(paper_example(id_).election))
        out[id_] = str(path)
    path = tmp_path / 'unanimous.ballots'
    path.write_text('parties: A B C\nk: 4\n3 : A\n')
    out['unanimous'] = str(path)
    path = tmp_path / 'odd.ballots'
    path.write_text('parties: A B\nk: 2\n3 : A\n')
    out['odd'] = str(path)
    path = tmp_path / 'k4.edges'
    path.write_text('0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n')
    out['k4'] = str(path)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_composed(files, capsys):
    code, out, _ = run(capsys, 'compute', '--rule', 'maj+dhondt', '--input', files['ex3'])
    assert code == 0
    assert out.splitlines()[0] == 'p0=8 p2=4 p4=4'
    assert out.splitlines()[1].startswith('pav: ')


def test_compute_unanimous_pav(files, capsys):
    code, out, _ = run(capsys, 'compute', '--rule', 'pav', '--input', files['unanimous'])
    assert code == 0 and out.splitlines()[0] == 'A=4'


def test_compute_audit(files, capsys):
    code, out, _ = run(capsys, 'compute', '--rule', 'cu+dhondt', '--input', files['ex1'], '--audit')
    lines = out.splitlines()
    assert lines[0] == 'p0=4 p1=1 p2=1'
    assert lines[2] == 'jr: PASS  pjr: PASS  ejr: FAIL (p3, ℓ=2)'


def test_compute_json_round_trip(files, capsys):
    code, out, _ = run(capsys, '--json', 'compute', '--rule', 'cu+dhondt', '--input', files['ex1'], '--audit')
    data = json.loads(out)
    election = paper_example('ex1').election
    committee = parse_committee(election, data['committee'])
    assert committee.seats == (4, 1, 1, 0)
    assert data['pav'] == '166/15'
    ejr = data['audit']['ejr']
    assert not ejr['passed']
    assert validate_witness(election, committee, AxiomVerdict('ejr', False, ejr['witness']))


def test_compute_k_override_and_stdin(files, capsys, monkeypatch):
    import io
    monkeypatch.setattr(sys, 'stdin', io.StringIO(open(files['ex3']).read()))
    code, out, _ = run(capsys, 'compute', '--rule', 'maj+dhondt', '--input', '-', '--k', '4')
    assert out.splitlines()[0] == 'p0=2 p2=1 p4=1'


def test_compute_sampled_rp(files, capsys):
    code, out, _ = run(capsys, 'compute', '--rule', 'rp+dhondt', '--input', files['ex2'], '--seed', '1', '--trials', '2000')
    assert code == 0 and out.splitlines()[0] == 'p0=4 p1=2'


def test_compute_errors(files, capsys):
    with pytest.raises(SystemExit) as info:
        main(['compute', '--rule', 'nope', '--input', files['ex1']])
    assert info.value.code == 2
    code, _, err = run(capsys, 'compute', '--rule', 'pav', '--input', files['ex3'], '--cap', '10')
    assert code == 2 and 'cap 10' in err and 'lspav' in err
    code, _, err = run(capsys, 'compute', '--rule', 'pav', '--input', '/does/not/exist')
    assert code == 2


def test_check_core(files, capsys):
    code, out, _ = run(capsys, 'check', '--axiom', 'core', '--input', files['ex3'], '--committee', 'p0=8,p2=4,p4=4')
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == 'core: FAIL'
    witness = json.loads(lines[1])
    assert witness['deviation'] == [4, 5, 0, 5, 0]
    assert sum(witness['coalition'].values()) == 14


def test_check_json_round_trip(files, capsys):
    code, out, _ = run(capsys, 'check', '--json', '--axiom', 'core', '--input', files['ex3'],
                       '--committee', 'p0=8 p2=4 p4=4')
    data = json.loads(out)
    election = paper_example('ex3').election
    committee = parse_committee(election, data['committee'])
    assert validate_witness(election, committee, AxiomVerdict('core', data['passed'], data['witness']))


def test_check_pass_and_rule(files, capsys):
    code, out, _ = run(capsys, 'check', '--axiom', 'core', '--input', files['ex3'], '--rule', 'lspav')
    assert code == 0 and out.strip() == 'core: PASS'
    code, out, _ = run(capsys, 'check', '--axiom', 'ejr', '--input', files['ex1'], '--committee', 'p0=4,p1=1,p2=1')
    assert code == 1 and out.startswith('ejr: FAIL (p3, ℓ=2)')


def test_check_pr_domain_error(files, capsys):
    code, _, err = run(capsys, 'check', '--axiom', 'pr', '--input', files['odd'], '--committee', 'A=2')
    assert code == 2 and 'k | n' in err


def test_check_monotone(files, capsys):
    code, out, _ = run(capsys, 'check', '--axiom', 'monotone', '--input', files['ex3'], '--rule', 'maj+quota',
                       '--k-max', '20')
    assert code == 0 and out.strip() == 'monotone: PASS'
    code, _, err = run(capsys, 'check', '--axiom', 'monotone', '--input', files['ex3'])
    assert code == 2


def test_check_bad_committee(files, capsys):
    code, _, err = run(capsys, 'check', '--axiom', 'jr', '--input', files['ex1'], '--committee', 'p0=2')
    assert code == 2 and 'seats' in err
    code, _, _ = run(capsys, 'check', '--axiom', 'jr', '--input', files['ex1'])
    assert code == 2


def test_generate_example_round_trip(capsys):
    code, out, _ = run(capsys, 'generate', '--example', 'ex2')
    assert code == 0
    assert parse_election(out) == paper_example('ex2').election
    code, out, _ = run(capsys, 'generate', '--example', 'stv-ejr', '--k', '19')
    assert parse_election(out).n == 120 * 19


def test_generate_reductions(files, capsys):
    code, out, _ = run(capsys, 'generate', '--reduction', 'is-maxphragmen', '--graph', files['k4'], '--t', '1')
    assert out.splitlines()[0] == '# threshold: max load at most 1/3'
    e = parse_election(out)
    assert (e.m, e.n, e.k) == (4, 6, 1)
    code, out, _ = run(capsys, 'generate', '--json', '--reduction', 'is-pav', '--graph', files['k4'], '--t', '2')
    data = json.loads(out)
    assert data['threshold'] == '6'
    assert parse_election(data['ballots']).k == 2


def test_generate_random_deterministic(capsys):
    argv = ['generate', '--random', '--seed', '1', '--n', '6', '--parties', '4', '--k', '3']
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second and parse_election(first).n == 6


def test_generate_needs_one_mode(capsys):
    code, _, err = run(capsys, 'generate')
    assert code == 2
    code, _, err = run(capsys, 'generate', '--random')
    assert code == 2


def test_examples_table(capsys):
    code, out, _ = run(capsys, 'examples', '--all')
    assert code == 0
    assert not [line for line in out.splitlines() if line.startswith('FAIL')]
    assert out.splitlines()[-1].endswith('passed')
    code, out, _ = run(capsys, 'examples')
    assert 'ex1' in out.split()


def test_threads_give_identical_output(files, capsys):
    outputs = set()
    for threads in ('1', '2', '3'):
        _, out, _ = run(capsys, '--threads', threads, 'compute', '--rule', 'pav', '--input', files['ex2'], '--audit')
        outputs.add(out)
    assert len(outputs) == 1


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, '-m', 'partyapproval', 'compute', '--rule', 'maj+dhondt', '--input', files['ex3']],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.startswith('p0=8 p2=4 p4=4')
