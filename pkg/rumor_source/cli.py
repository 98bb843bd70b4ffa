#!/usr/bin/env python

import functools

import click
from flask import current_app
from flask.cli import AppGroup, FlaskGroup, with_appcontext

from . import codec, exactprob
from .centrality import centrality_all
from .exceptions import RumorSourceError
from .harness import FIGURES, SCENARIOS
from .spread import BACKENDS
from .topology import SuspectSet
from .urn import ARITHMETICS

FORMATS = ('text', 'json', 'csv')


def detector():
    return current_app.extensions['rumor_source']


def handle_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except RumorSourceError as e:
            current_app.logger.error('%s failed: %r', f.__name__, e)
            click.echo('error: {}'.format(e.message), err=True)
            click.get_current_context().exit(e.code)
    return wrapper


def int_list(ctx, param, value):
    if value is None:
        return None
    try:
        return tuple(int(v) for v in value.split(',') if v.strip())
    except ValueError:
        raise click.BadParameter('expected comma-separated integers, got {!r}'.format(value))


def emit(text, output=None):
    if output is None:
        click.echo(text, nl=not text.endswith('\n'))
        return
    with open(output, 'w') as fh:
        fh.write(text if text.endswith('\n') else text + '\n')
    current_app.logger.info('wrote %s', output)


def emit_result(result, fmt):
    if fmt == 'json':
        emit(codec.dumps(result.to_dict()))
    elif fmt == 'csv':
        doc = result.to_dict()
        emit('value,exact_value,method,scenario\n{},{},{},{}\n'.format(
            repr(doc['value']), doc['exact_value'] or '', doc['method'], doc['scenario']))
    else:
        emit('%.12g' % float(result))


def emit_real(name, value, fmt):
    if fmt == 'json':
        emit(codec.dumps({'name': name, 'value': value}))
    elif fmt == 'csv':
        emit('name,value\n{},{}\n'.format(name, repr(value)))
    else:
        emit('%.12g' % value)


seed_option = click.option('--seed', type=click.IntRange(min=0), required=True, help='Base seed of the run.')
delta_option = click.option('--delta', type=click.IntRange(min=1), required=True, help='Degree of the regular tree.')
n_option = click.option('--n', 'n', type=click.IntRange(min=1), required=True, help='Number of infected nodes.')
format_option = click.option('--format', 'fmt', type=click.Choice(FORMATS), default='text')
arithmetic_option = click.option('--arithmetic', type=click.Choice(ARITHMETICS), default='auto')


@click.command('simulate')
@delta_option
@n_option
@seed_option
@click.option('--backend', type=click.Choice(sorted(BACKENDS)), default=None)
@click.option('--output', type=click.Path(dir_okay=False, writable=True), default=None)
@click.option('--format', 'fmt', type=click.Choice(('json', 'csv')), default='json')
@with_appcontext
@handle_errors
def simulate_command(delta, n, seed, backend, output, fmt):
    """Spread a rumor from the origin of a regular tree."""
    snap = detector().simulate(delta, n, seed, backend=backend)
    if fmt == 'json':
        emit(codec.dumps(codec.snapshot_to_dict(snap)), output)
    else:
        lines = ['order,node'] + ['{},{}'.format(i, u) for i, u in enumerate(snap.sequence)]
        emit('\n'.join(lines) + '\n', output)


@click.command('estimate')
@click.argument('snapshot', type=click.File('r'))
@click.option('--suspects', 'pattern', type=click.Choice(SuspectSet.PATTERNS), default=SuspectSet.ALL)
@click.option('--members', callback=int_list, default=None, help='Comma-separated suspect ids.')
@click.option('--k', type=click.IntRange(min=1), default=None)
@click.option('--anchor', type=int, default=None)
@seed_option
@click.option('--format', 'fmt', type=click.Choice(('json', 'csv')), default='json')
@with_appcontext
@handle_errors
def estimate_command(snapshot, pattern, members, k, anchor, seed, fmt):
    """MAP source estimate for a snapshot document."""
    snap = codec.snapshot_from_dict(codec.loads(snapshot.read()))
    suspects = detector().suspects(snap, pattern, members=members, k=k, anchor=anchor)
    estimate = detector().estimate(snap, suspects, tie_seed=seed)
    if fmt == 'json':
        emit(codec.dumps(estimate.to_dict()))
    else:
        doc = estimate.to_dict()
        emit('chosen,method,tie_broken,argmax_set\n{},{},{},{}\n'.format(
            doc['chosen'], doc['method'], doc['tie_broken'], ' '.join(str(u) for u in doc['argmax_set'])))


@click.command('centrality')
@click.argument('snapshot', type=click.File('r'))
@with_appcontext
@handle_errors
def centrality_command(snapshot):
    """Rumor centrality of every node of a tree snapshot, as CSV."""
    snap = codec.snapshot_from_dict(codec.loads(snapshot.read()))
    emit(codec.centrality_rows_to_csv(centrality_all(snap)))


exact_group = AppGroup('exact', help='Finite-n correct-detection probabilities.')


@exact_group.command('all-suspects')
@delta_option
@n_option
@arithmetic_option
@click.option('--method', type=click.Choice((exactprob.CLOSED_FORM, exactprob.LEMMA9_SUM)), default=None)
@format_option
@handle_errors
def exact_all(delta, n, arithmetic, method, fmt):
    result = exactprob.pc_all_suspects(delta, n, arithmetic, detector().exact_limit, method=method)
    emit_result(result, fmt)


@exact_group.command('connected')
@delta_option
@click.option('--k', type=click.IntRange(min=1), required=True)
@n_option
@arithmetic_option
@format_option
@handle_errors
def exact_connected(delta, k, n, arithmetic, fmt):
    emit_result(detector().exact(exactprob.CONNECTED_K, delta, n, k=k, arithmetic=arithmetic), fmt)


@exact_group.command('general-bound')
@delta_option
@click.option('--k', type=click.IntRange(min=1), required=True)
@n_option
@arithmetic_option
@format_option
@handle_errors
def exact_general(delta, k, n, arithmetic, fmt):
    emit_result(detector().exact(exactprob.GENERAL_K_BOUND, delta, n, k=k, arithmetic=arithmetic), fmt)


@exact_group.command('two-suspects')
@delta_option
@click.option('--d', type=int, required=True)
@n_option
@arithmetic_option
@click.option('--breakdown', is_flag=True, help='Print the win/tie/loss/absent masses instead.')
@format_option
@handle_errors
def exact_two(delta, d, n, arithmetic, breakdown, fmt):
    if not breakdown:
        emit_result(detector().exact(exactprob.TWO_AT_D, delta, n, d=d, arithmetic=arithmetic), fmt)
        return
    masses = detector().breakdown(delta, d, n, arithmetic)
    doc = {key: str(getattr(masses, key)) for key in ('win', 'tie', 'loss', 'absent', 'pc')}
    doc['states'] = masses.states
    emit(codec.dumps(doc))


@exact_group.command('conditional')
@delta_option
@click.option('--m', type=click.IntRange(min=0), required=True)
@n_option
@arithmetic_option
@click.option('--bounds', is_flag=True, help='Print the lower and upper bracket too.')
@handle_errors
def exact_conditional(delta, m, n, arithmetic, bounds):
    limit = detector().exact_limit
    value = exactprob.pc_conditional(delta, m, n, arithmetic, limit)
    if not bounds:
        emit('%.12g' % float(value))
        return
    low, high = exactprob.pc_conditional_bounds(delta, m, n, arithmetic, limit)
    emit('%.12g %.12g %.12g' % (float(low), float(value), float(high)))


@exact_group.command('audit')
@click.option('--n-min', type=click.IntRange(min=2), default=3)
@click.option('--n-max', type=click.IntRange(min=2), default=100)
@click.option('--d-max', type=click.IntRange(min=1), default=4)
@click.option('--format', 'fmt', type=click.Choice(('json', 'csv')), default='csv')
@handle_errors
def exact_audit(n_min, n_max, d_max, fmt):
    """Compare the line two-suspect enumeration with the closed-form expression."""
    rows = [audit.to_dict() for audit in exactprob.audit_line_table(range(n_min, n_max + 1), range(1, d_max + 1))]
    if fmt == 'json':
        emit(codec.dumps(rows))
        return
    columns = ('n', 'd', 'enumerated_pc', 'expression', 'matches_as_pc', 'matches_as_pe',
               'tie_index', 'expression_tie_index', 'mass_balanced')
    lines = [','.join(columns)]
    lines.extend(','.join('' if row[c] is None else str(row[c]) for c in columns) for row in rows)
    emit('\n'.join(lines) + '\n')


asymptotic_group = AppGroup('asymptotic', help='Limits of the detection probability as n grows.')


@asymptotic_group.command('phi1')
@delta_option
@format_option
@handle_errors
def asymptotic_phi1(delta, fmt):
    emit_real('phi1', exactprob.phi1(delta), fmt)


@asymptotic_group.command('phi2')
@delta_option
@click.option('--k', type=click.IntRange(min=1), required=True)
@format_option
@handle_errors
def asymptotic_phi2(delta, k, fmt):
    emit_real('phi2', exactprob.phi2(delta, k), fmt)


@asymptotic_group.command('phi3')
@delta_option
@format_option
@handle_errors
def asymptotic_phi3(delta, fmt):
    emit_real('phi3', exactprob.phi3(delta), fmt)


@asymptotic_group.command('two-suspects')
@delta_option
@click.option('--d', type=int, required=True)
@format_option
@handle_errors
def asymptotic_two(delta, d, fmt):
    emit_real('two-suspects', exactprob.two_suspect_limit(delta, d), fmt)


@click.command('experiment')
@click.option('--scenario', type=click.Choice(SCENARIOS), required=True)
@delta_option
@click.option('--n', 'n', type=click.IntRange(min=1), default=None)
@click.option('--k', type=int, default=None)
@click.option('--d', type=int, default=None)
@click.option('--trials', type=click.IntRange(min=1), default=None)
@seed_option
@click.option('--backend', type=click.Choice(sorted(BACKENDS)), default=None)
@click.option('--format', 'fmt', type=click.Choice(('json', 'csv')), default='json')
@with_appcontext
@handle_errors
def experiment_command(scenario, delta, n, k, d, trials, seed, backend, fmt):
    """Monte Carlo estimate of the detection probability with a Wilson interval."""
    cfg = detector().experiment_config(scenario, delta, seed, n=n, k=k, d=d, trials=trials, backend=backend)
    report = detector().experiment(cfg)
    if fmt == 'json':
        emit(codec.dumps(report.to_dict()))
    else:
        emit(codec.report_rows_to_csv([report.to_row()]))


@click.command('figure')
@click.argument('figure', type=click.Choice(sorted(FIGURES)))
@click.option('--n', 'n', type=click.IntRange(min=1), default=None)
@click.option('--trials', type=click.IntRange(min=1), default=None)
@seed_option
@click.option('--values', callback=int_list, default=None, help='Comma-separated sweep values.')
@click.option('--output', type=click.Path(dir_okay=False, writable=True), default=None)
@click.option('--format', 'fmt', type=click.Choice(('csv', 'json')), default='csv')
@with_appcontext
@handle_errors
def figure_command(figure, n, trials, seed, values, output, fmt):
    """Sweep one figure's independent variable and emit its data."""
    overrides = {'seed': seed}
    for key, value in (('n', n), ('trials', trials), ('values', values)):
        if value is not None:
            overrides[key] = value
    dataset = detector().figure(figure, overrides)
    if fmt == 'json':
        emit(codec.dumps(dataset.to_dict()), output)
    else:
        emit(codec.report_rows_to_csv(dataset.rows()), output)


def register_commands(app):
    for command in (simulate_command, estimate_command, centrality_command, exact_group,
                    asymptotic_group, experiment_command, figure_command):
        app.cli.add_command(command)


def create_cli_app():
    from .app import create_app
    return create_app()


main = FlaskGroup(
    name='rumor-source',
    help='Rumor source detection on regular trees.',
    create_app=create_cli_app,
    add_default_commands=False,
    load_dotenv=False,
)


if __name__ == '__main__':
    main()
