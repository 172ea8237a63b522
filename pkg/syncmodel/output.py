"""
Result serialization: CSV with a '#' manifest header, or a single JSON document {manifest, columns, rows}
"""

import io
import json
import logging
import numpy as np
import pandas as pd

from enum import Enum

__all__ = ['OutputFormat', 'write_table', 'render_table', 'read_manifest', 'read_table']

MANIFEST_PREFIX = '# manifest: '
COLUMNS_PREFIX = '# columns: '


class OutputFormat(Enum):
    CSV = 'csv'
    JSON = 'json'


def _plain(value):
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.generic):
        return value.item()
    return value


def _manifest_text(manifest):
    return json.dumps(manifest, sort_keys=True, separators=(',', ':'), default=_plain)


def render_table(frame, manifest, fmt=OutputFormat.CSV):
    """
    :param frame: DataFrame, written without its index
    :param manifest: json-serializable run description
    :param fmt: OutputFormat or 'csv'/'json'
    :return: str
    """
    fmt = OutputFormat(fmt) if isinstance(fmt, str) else fmt
    frame = frame.apply(lambda col: col.map(_plain)) if len(frame) else frame

    if fmt == OutputFormat.CSV:
        buffer = io.StringIO()
        buffer.write(MANIFEST_PREFIX + _manifest_text(manifest) + '\n')
        buffer.write(COLUMNS_PREFIX + ','.join(str(c) for c in frame.columns) + '\n')
        frame.to_csv(buffer, index=False, lineterminator='\n')
        return buffer.getvalue()

    document = {'manifest': manifest,
                'columns': [str(c) for c in frame.columns],
                'rows': [[_plain(v) for v in row] for row in frame.itertuples(index=False, name=None)]}
    return json.dumps(document, sort_keys=False, indent=1, default=_plain) + '\n'


def write_table(frame, manifest, path, fmt=OutputFormat.CSV):
    """
    Write a result table; with path None the rendered text is only returned
    """
    text = render_table(frame, manifest, fmt)
    if path is not None:
        with open(path, 'w', newline='') as out:
            out.write(text)
        logging.info('write_table: %d rows to %s' % (len(frame), path))
    return text


def read_manifest(path):
    """
    Recover the manifest embedded in a CSV or JSON result file
    """
    with open(path, 'r') as f:
        text = f.read()
    if text.startswith(MANIFEST_PREFIX):
        return json.loads(text.splitlines()[0][len(MANIFEST_PREFIX):])
    return json.loads(text)['manifest']


def read_table(path):
    """
    :return: DataFrame of the rows of a CSV or JSON result file
    """
    with open(path, 'r') as f:
        text = f.read()
    if text.startswith(MANIFEST_PREFIX):
        return pd.read_csv(io.StringIO(text), comment='#')
    document = json.loads(text)
    return pd.DataFrame(document['rows'], columns=document['columns'])
