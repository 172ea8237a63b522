import json

import numpy as np
import pandas as pd

from pytest import approx

from syncmodel.analysis import SyncState
from syncmodel.output import OutputFormat, read_manifest, read_table, render_table, write_table

MANIFEST = {'command': 'simulate', 'config': {'seed': 3, 'model': {'coupling': 2.0}}, 'seed': 3, 'version': '0.1.0'}


def _frame():
    return pd.DataFrame({'t': [0., 0.5], 'r_modulus': [1., np.float64(0.75)],
                         'classification': [SyncState.FULL, SyncState.PARTIAL]})


def test_csv_header_lines():
    lines = render_table(_frame(), MANIFEST, 'csv').splitlines()
    assert lines[0].startswith('# manifest: ')
    assert json.loads(lines[0][len('# manifest: '):]) == MANIFEST
    assert lines[1] == '# columns: t,r_modulus,classification'
    assert lines[2] == 't,r_modulus,classification'
    assert lines[3] == '0.0,1.0,fully_synchronized'


def test_json_document_layout():
    document = json.loads(render_table(_frame(), MANIFEST, OutputFormat.JSON))
    assert set(document) == {'manifest', 'columns', 'rows'}
    assert document['columns'] == ['t', 'r_modulus', 'classification']
    assert document['rows'][1] == [0.5, 0.75, 'partially_synchronized']


def test_rendering_is_deterministic():
    assert render_table(_frame(), MANIFEST) == render_table(_frame(), dict(reversed(list(MANIFEST.items()))))


def test_write_then_read_csv(tmp_path):
    path = str(tmp_path / 'run.csv')
    text = write_table(_frame(), MANIFEST, path, OutputFormat.CSV)
    with open(path) as f:
        assert f.read() == text
    assert read_manifest(path) == MANIFEST
    table = read_table(path)
    assert list(table.columns) == ['t', 'r_modulus', 'classification']
    assert table['r_modulus'].tolist() == approx([1., 0.75])


def test_write_then_read_json(tmp_path):
    path = str(tmp_path / 'run.json')
    write_table(_frame(), MANIFEST, path, 'json')
    assert read_manifest(path)['seed'] == 3
    assert read_table(path)['classification'].tolist() == ['fully_synchronized', 'partially_synchronized']


def test_write_without_path_only_renders(tmp_path):
    assert write_table(_frame(), MANIFEST, None).startswith('# manifest: ')
    assert list(tmp_path.iterdir()) == []


def test_empty_table():
    text = render_table(pd.DataFrame(columns=['suite', 'status']), MANIFEST)
    assert text.splitlines()[-1] == 'suite,status'
