from pathlib import Path

from src.sounder.models.registry import describe_models, get_model


def generate_model_docs(app):
    lines = ['Model Reference', '===============', '']
    for row in describe_models():
        key = row['key']
        model = get_model(key)
        lines.append(key)
        lines.append('-' * len(key))
        lines.append('')
        lines.append(
            f"``{row['name']}``: {row['segments']} segment(s), floor {row['floor_db']} dB, "
            f"delays up to {row['max_delay_us']} us."
        )
        lines.append('')
        lines.append('.. code-block:: yaml')
        lines.append('')
        for text in model.to_yaml().splitlines():
            lines.append(f'    {text}')
        lines.append('')
    out_file = Path(app.srcdir) / 'models.rst'
    out_file.write_text('\n'.join(lines))


def setup(app):
    app.connect('builder-inited', generate_model_docs)
    return {'version': '0.1'}
