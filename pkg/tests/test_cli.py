import json

import pytest
from click.testing import CliRunner

import cli as cli_module
from src import metadata_header
from src.errors import InvariantViolation


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def invoke(runner):
    def _invoke(*args):
        return runner.invoke(cli_module.cli, [str(a) for a in args])
    return _invoke


@pytest.fixture
def path_file(tmp_path):
    path = tmp_path / 'path.txt'
    path.write_text('2 3 2\n0 1\n1 2\n')
    return str(path)


def read_lines(path):
    with open(path) as f:
        return f.read().splitlines()


class TestGroup:

    def test_help(self, invoke):
        result = invoke('--help')
        assert result.exit_code == 0
        for command in ('gen', 'peel', 'run', 'sweep', 'concentration', 'dist', 'zipf', 'dual', 'regular', 'sketch', 'cm-error'):
            assert command in result.output

    def test_version(self, invoke):
        result = invoke('--version')
        assert result.exit_code == 0
        assert '1.0.0' in result.output

    def test_unknown_flag(self, invoke, tmp_path):
        assert invoke('gen', '--colour', 'red', '--out', tmp_path / 'g.txt').exit_code == 1


class TestGen:

    def test_same_seed_same_bytes(self, invoke, tmp_path):
        first, second = tmp_path / 'a.txt', tmp_path / 'b.txt'
        for out in (first, second):
            result = invoke('gen', '--k', 3, '--n', 100, '--lambda', 0.8, '--seed', 5, '--out', out)
            assert result.exit_code == 0, result.output
        assert first.read_bytes() == second.read_bytes()
        lines = first.read_text().splitlines()
        assert lines[0] == f'# {metadata_header(5)}'
        assert lines[1] == '3 100 80'

    def test_dual_kind(self, invoke, tmp_path):
        out = tmp_path / 'dual.txt'
        assert invoke('gen', '--kind', 'dual-r', '--n', 8, '--r', 3, '--out', out).exit_code == 0
        assert out.read_text().splitlines()[1] == '21 56 8'

    def test_missing_parameter(self, invoke, tmp_path):
        assert invoke('gen', '--kind', 'dual', '--out', tmp_path / 'g.txt').exit_code == 1

    def test_rejection_budget(self, invoke, tmp_path):
        assert invoke('gen', '--kind', 'regular', '--t', 1, '--out', tmp_path / 'g.txt').exit_code == 1


class TestPeelAndRun:

    def test_peel_with_closure(self, invoke, tmp_path, path_file):
        out = tmp_path / 'peel.json'
        result = invoke('peel', '--graph', path_file, '--vertex', 1, '--format', 'json', '--out', out)
        assert result.exit_code == 0, result.output
        document = json.loads(out.read_text())
        assert document['peelable'] is True
        assert document['closure_vertices'] == [0, 1, 2]
        assert [row['level'] for row in document['rows']] == [0, 1, 0]

    def test_peel_empty_graph(self, invoke, tmp_path):
        graph, out = tmp_path / 'empty.txt', tmp_path / 'peel.json'
        graph.write_text('2 0 0\n')
        result = invoke('peel', '--graph', graph, '--format', 'json', '--out', out)
        assert result.exit_code == 0, result.output
        document = json.loads(out.read_text())
        assert document['giant_excess'] == 0
        assert document['peelable'] is True
        assert document['rows'] == []

    def test_run_writes_edges_and_summary(self, invoke, tmp_path, path_file):
        out, summary = tmp_path / 'edges.csv', tmp_path / 'summary.json'
        result = invoke('run', '--graph', path_file, '--N', 4, '--model', 'balanced', '--strategy', 'cm',
                        '--seed', 3, '--out', out, '--summary', summary)
        assert result.exit_code == 0, result.output
        assert read_lines(out) == [f'# {metadata_header(3)}', 'edge_id,o_e,c_e,R_e', '0,4,4,0.0', '1,4,4,0.0']
        document = json.loads(summary.read_text())
        assert document['err_unweighted'] == 0.0
        assert document['model'] == 'balanced'

    def test_run_is_reproducible(self, invoke, tmp_path):
        outputs = []
        for name in ('a.csv', 'b.csv'):
            out = tmp_path / name
            result = invoke('run', '--k', 3, '--n', 80, '--lambda', 0.9, '--N', 20, '--seed', 11, '--out', out)
            assert result.exit_code == 0, result.output
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]

    def test_explicit_keys_with_checks(self, invoke, tmp_path, path_file):
        keys = tmp_path / 'keys.txt'
        keys.write_text('0\n1\n1\n')
        out = tmp_path / 'edges.csv'
        result = invoke('run', '--graph', path_file, '--keys', keys, '--check-invariants', '--out', out)
        assert result.exit_code == 0, result.output
        assert read_lines(out)[2:] == ['0,1,1,0.0', '1,2,2,0.0']

    def test_beta_without_zipf(self, invoke, tmp_path, path_file):
        result = invoke('run', '--graph', path_file, '--model', 'uniform', '--beta', 0.5, '--out', tmp_path / 'e.csv')
        assert result.exit_code == 1

    @pytest.mark.parametrize('flags', [('--model', 'balanced'), ('--N', 3), ('--model', 'zipf', '--beta', 0.5)])
    def test_keys_exclude_stream_model_flags(self, invoke, tmp_path, path_file, flags):
        keys = tmp_path / 'keys.txt'
        keys.write_text('0\n1\n')
        out = tmp_path / 'e.csv'
        result = invoke('run', '--graph', path_file, '--keys', keys, *flags, '--out', out)
        assert result.exit_code == 1
        assert '--keys replaces the stream model' in result.output
        assert not out.exists()

    def test_out_of_range_keys(self, invoke, tmp_path, path_file):
        keys = tmp_path / 'keys.txt'
        keys.write_text('0\n5\n')
        assert invoke('run', '--graph', path_file, '--keys', keys, '--out', tmp_path / 'e.csv').exit_code == 1

    def test_invariant_violation_exits_with_two(self, invoke, tmp_path, path_file, monkeypatch):
        def broken_run(*args, **kwargs):
            raise InvariantViolation('Edge 0 undercounts', step=4)

        monkeypatch.setattr(cli_module, 'run', broken_run)
        out = tmp_path / 'e.csv'
        result = invoke('run', '--graph', path_file, '--N', 2, '--check-invariants', '--out', out)
        assert result.exit_code == 2
        assert not out.exists()


class TestExperiments:

    def test_sweep_bytes_do_not_depend_on_jobs(self, invoke, tmp_path):
        outputs = []
        for jobs, name in ((1, 'a.csv'), (2, 'b.csv')):
            out = tmp_path / name
            result = invoke('sweep', '--k', 3, '--n', 60, '--lambda-grid', '0.3:0.9:0.3', '--N', 5,
                            '--replicates', 2, '--seed', 7, '--jobs', jobs, '--out', out)
            assert result.exit_code == 0, result.output
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]
        lines = outputs[0].decode().splitlines()
        assert lines[1] == 'k,n,m,lambda,N,model,strategy,replicate,seed,err_unweighted,err_weighted,core_fraction,giant_excess'
        assert len(lines) == 2 + 3 * 2 * 2

    def test_sweep_needs_one_density_flag(self, invoke, tmp_path):
        result = invoke('sweep', '--k', 3, '--n', 60, '--lambda', 0.5, '--lambda-grid', '0.3:0.9:0.3',
                        '--out', tmp_path / 's.csv')
        assert result.exit_code == 1

    def test_concentration_writes_stats(self, invoke, tmp_path):
        out = tmp_path / 'conc.csv'
        result = invoke('concentration', '--k', 2, '--n', 50, '--lambda', 1.0, '--N', 5, '--replicates', 3,
                        '--strategy', 'cu', '--out', out)
        assert result.exit_code == 0, result.output
        stats = read_lines(tmp_path / 'conc.stats.csv')
        assert stats[1].startswith('k,n,m,lambda,N,model,strategy,replicates,mean_err_unweighted')
        assert len(stats) == 3

    def test_dist_with_histogram(self, invoke, tmp_path):
        out, histogram = tmp_path / 'dist.csv', tmp_path / 'hist.csv'
        result = invoke('dist', '--k', 3, '--lambda', 1.0, '--n', 60, '--N', 10, '--histogram', histogram, '--out', out)
        assert result.exit_code == 0, result.output
        assert read_lines(out)[1] == 'position,edge_id,o_e,c_e,R_e'
        assert len(read_lines(out)) == 2 + 60
        assert read_lines(histogram)[1] == 'bin_start,count'

    def test_zipf(self, invoke, tmp_path):
        out = tmp_path / 'zipf.json'
        result = invoke('zipf', '--k', 3, '--n', 60, '--lambda', 0.5, '--N', 5, '--replicates', 1, '--betas', '0,0.9',
                        '--strategy', 'cu', '--format', 'json', '--out', out)
        assert result.exit_code == 0, result.output
        document = json.loads(out.read_text())
        assert document['betas'] == [0.0, 0.9]
        assert [row['model'] for row in document['rows']] == ['zipf:0.0', 'zipf:0.9']

    def test_bad_betas(self, invoke, tmp_path):
        result = invoke('zipf', '--k', 3, '--n', 60, '--lambda', 0.5, '--betas', 'x', '--out', tmp_path / 'z.csv')
        assert result.exit_code == 1

    def test_dual(self, invoke, tmp_path):
        out = tmp_path / 'dual.json'
        result = invoke('dual', '--n', 5, '--N', 200, '--strategy', 'cm', '--format', 'json', '--out', out)
        assert result.exit_code == 0, result.output
        document = json.loads(out.read_text())
        assert document['measured'] == 1.0
        assert document['predicted'] == 1.0
        assert document['header'] == metadata_header(20220501)

    def test_dual_needs_r_at_least_two(self, invoke, tmp_path):
        assert invoke('dual', '--n', 5, '--r', 1, '--out', tmp_path / 'd.csv').exit_code == 1

    def test_audit(self, invoke, tmp_path):
        out = tmp_path / 'audit.csv'
        result = invoke('audit', '--n', 4, '--steps', 50, '--out', out)
        assert result.exit_code == 0, result.output
        lines = read_lines(out)
        assert lines[1] == 't,edge,p,q,minedges,increased,counter_sum'
        assert len(lines) == 2 + 50

    def test_regular_cm_rate_and_positive_error(self, invoke, tmp_path):
        assert invoke('regular', '--t', 5, '--N', 5, '--replicates', 2, '--out', tmp_path / 'r.csv').exit_code == 0
        assert invoke('cm-rate', '--k', 3, '--lambda', 0.5, '--n', 100, '--replicates', 2,
                      '--out', tmp_path / 'c.csv').exit_code == 0
        assert invoke('cm-error', '--k', 3, '--lambda', 0.5, '--n', 100, '--replicates', 2,
                      '--out', tmp_path / 'e.csv').exit_code == 0
        assert invoke('positive-error', '--k', 3, '--lambda', 1.0, '--n', 60, '--N', 5, '--replicates', 2,
                      '--out', tmp_path / 'p.csv').exit_code == 0
        assert len(read_lines(tmp_path / 'p.csv')) == 2 + 4


class TestSketch:

    def test_sketch_reports_estimates(self, invoke, tmp_path):
        keys = tmp_path / 'keys.txt'
        keys.write_text('apple\npear\napple\nfig\napple\n')
        out, state, graph = tmp_path / 'est.csv', tmp_path / 'sketch.bin', tmp_path / 'graph.txt'
        result = invoke('sketch', '--width', 50, '--depth', 3, '--keys', keys, '--state-out', state,
                        '--graph-out', graph, '--out', out)
        assert result.exit_code == 0, result.output
        rows = [line.split(',') for line in read_lines(out)[2:]]
        assert [row[0] for row in rows] == ['apple', 'pear', 'fig']
        assert all(int(estimate) >= int(true) for _, estimate, true in rows)
        assert rows[0][2] == '3'
        assert state.read_bytes().startswith(b'{"hash_seed": ')
        assert read_lines(graph)[1].split()[1:] == ['50', '3']

    def test_guarantee(self, invoke, tmp_path):
        out = tmp_path / 't.json'
        result = invoke('guarantee', '--length', 500, '--universe', 50, '--trials', 5, '--format', 'json', '--out', out)
        assert result.exit_code == 0, result.output
        document = json.loads(out.read_text())
        assert (document['k'], document['n']) == (3, 82)
