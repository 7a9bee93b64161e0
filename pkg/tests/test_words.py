import os

import pytest

from thetalf import Constants
from thetalf.words import (TwistWord, ParseError, IllegalMove, DerivationMismatch, CurveRegistry,
                           Relation, DerivationScript, DISJOINT, ONE_POINT, Meeting, c, b, sigma,
                           named, parse_word, format_word, shorthand, parse_meeting, free_reduce,
                           apply_commute, apply_braid, cancel_pair, insert_trivial,
                           substitute_relation, conjugate_expand, homology_shadow_equal,
                           rewrite_search, replay)
from thetalf.involutions import (ThetaParams, ConfigurationError, theta_configuration,
                                 standard_chain_classes)


def test_parse_tokens():
    assert parse_word('c1 c2^-1 b0 s3 t_c') == TwistWord([c(1), c(2, -1), b(0), sigma(3), named('t_c')])
    assert parse_word('c1c2') == TwistWord([c(1), c(2)])
    assert parse_word('') == TwistWord()


def test_parse_digit_runs_and_groups():
    assert parse_word('12(34)^-1') == TwistWord([c(1), c(2), c(4, -1), c(3, -1)])
    assert parse_word('(c1 c2)^3') == TwistWord([c(1), c(2)] * 3)
    assert parse_word('12^-1') == TwistWord([c(1), c(2, -1)])
    assert len(parse_word('(54321)^6')) == 30
    assert parse_word('((12)^2 3)^-1') == parse_word('3^-1 (2^-1 1^-1)^2')


@pytest.mark.parametrize('text', ['c1 (c2', 'c1 c2)', 'c1 ? c2', 'c0', 's0'])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_word(text)


def test_shorthand():
    text = '123451234123121(21)^-6'
    w = parse_word(text)
    assert len(w) == 27
    assert shorthand(w) == text
    assert shorthand(parse_word('12345(1234)^-1')) == '12345(1234)^-1'
    assert shorthand(parse_word('b0 c1^-1')) == 'b0 c1^-1'
    assert format_word(parse_word('12^-1')) == 'c1 c2^-1'


def test_word_algebra():
    w = parse_word('c1 c2^-1 b0')
    assert w.inverse() == parse_word('b0^-1 c2 c1^-1')
    assert w ** -1 == w.inverse()
    assert len(w ** 3) == 9
    assert free_reduce(w + w.inverse()) == TwistWord()
    assert free_reduce('c1 c2 c2^-1 c3 c3^-1 c1^-1 c4') == parse_word('c4')


def test_meetings():
    assert parse_meeting('disjoint') == DISJOINT
    assert parse_meeting('one-point') == ONE_POINT
    assert parse_meeting('other(2)') == Meeting(Constants.OTHER, 2)
    assert str(Meeting(Constants.OTHER, 3)) == 'other(3)'
    with pytest.raises(ParseError):
        parse_meeting('twice')


def test_default_registry():
    registry = CurveRegistry()
    assert registry.meeting(c(1), c(2)) == ONE_POINT
    assert registry.meeting(c(1), c(3)) == DISJOINT
    assert registry.meeting(sigma(4), sigma(5)) == ONE_POINT
    assert registry.meeting(b(0), c(1)) is None
    assert registry.meeting(b(1), b(1)) == DISJOINT


def test_commute():
    assert apply_commute('c1 c3 c5', 0) == parse_word('c3 c1 c5')
    assert apply_commute('c1 c3^-1', 0) == parse_word('c3^-1 c1')
    with pytest.raises(IllegalMove):
        apply_commute('c1 c2', 0)
    with pytest.raises(IllegalMove):
        apply_commute('c1 b0', 0)
    with pytest.raises(IllegalMove):
        apply_commute('c1 c3', 1)


def test_commute_uses_declarations():
    theta = theta_configuration(ThetaParams(1, 2, 1))
    with pytest.raises(IllegalMove) as info:
        apply_commute('b1 b2', 0, theta.registry)
    assert info.value.declaration == Meeting(Constants.OTHER, 2)
    registry = CurveRegistry()
    registry.declare('b1', 'b2', 'disjoint')
    assert apply_commute('b1 b2', 0, registry) == parse_word('b2 b1')


def test_braid_patterns():
    assert apply_braid('c1 c2 c1', 0) == parse_word('c2 c1 c2')
    assert apply_braid('c1^-1 c2^-1 c1^-1', 0) == parse_word('c2^-1 c1^-1 c2^-1')
    assert apply_braid('c1^-1 c2 c1', 0) == parse_word('c2 c1 c2^-1')
    assert apply_braid('c1 c2 c1^-1', 0) == parse_word('c2^-1 c1 c2')
    with pytest.raises(IllegalMove):
        apply_braid('c1 c3 c1', 0)
    with pytest.raises(IllegalMove):
        apply_braid('c1 c2 c3', 0)


def test_braid_preserves_homology():
    cfg = standard_chain_classes(1)
    for text in ('c1 c2 c1', 'c1^-1 c2 c1', 'c1 c2 c1^-1', 'c1^-1 c2^-1 c1^-1'):
        assert homology_shadow_equal(text, apply_braid(text, 0), cfg)


def test_cancel_and_insert():
    assert cancel_pair('c1 c2 c2^-1', 1) == parse_word('c1')
    with pytest.raises(IllegalMove):
        cancel_pair('c1 c2', 0)
    assert insert_trivial('c1 c2', 1, '12') == parse_word('c1 c1 c2 c2^-1 c1^-1 c2')
    with pytest.raises(IllegalMove):
        insert_trivial('c1', 3, 'c2')


def test_substitute_relation():
    relation = Relation('chain', parse_word('t_c'), parse_word('(21)^6'))
    w = substitute_relation('1 t_c 2', 1, relation)
    assert w == parse_word('1 (21)^6 2')
    assert substitute_relation(w, 1, relation, 'backward') == parse_word('1 t_c 2')
    with pytest.raises(IllegalMove):
        substitute_relation('1 t_c 2', 0, relation)
    with pytest.raises(IllegalMove):
        substitute_relation('1 t_c 2', 1, 'chain')


def test_conjugate_expand():
    w = conjugate_expand(c(5), '1234')
    assert w == parse_word('12345(1234)^-1')
    cfg = standard_chain_classes(2)
    assert homology_shadow_equal(w, 'c1 c1^-1 ' + format_word(w), cfg)


def test_rewrite_search():
    path = rewrite_search('c1 c3 c5', 'c5 c3 c1')
    assert path is not None and len(path) == 3
    w = parse_word('c1 c3 c5')
    for move in path:
        w = apply_commute(w, move.pos) if move.kind == 'commute' else apply_braid(w, move.pos)
    assert w == parse_word('c5 c3 c1')
    assert rewrite_search('c1 c2 c1', 'c2 c1 c2') is not None
    assert rewrite_search('c1 c2', 'c2 c1') is None
    assert rewrite_search('c1 c2', 'c1 c2') == []


@pytest.mark.parametrize('name, final', [
    ('b0b1b2.drv', '123451234123121(21)^-6'),
    ('s_equality.drv', '121321432154321'),
    ('braid_s2.drv', 's5 s4 s3 s2 s1 ' * 6),
])
def test_shipped_derivations(name, final):
    script = DerivationScript.load(os.path.join(Constants.DERIVATION_DIR, name))
    assert replay(script) == parse_word(final)


def test_replay_relation_and_cycle():
    script = DerivationScript.parse('\n'.join([
        'relation chain t_c = (21)^6',
        'cycle t_c 0 0',
        'start 1 t_c 2',
        'subst 1 chain forward',
        'check 1 (21)^6 2',
        'search 2122(12)^5 ; 4',
        'expect 2122(12)^5',
    ]))
    assert replay(script) == parse_word('2122(12)^5')


def test_replay_illegal_move_reports_step():
    script = DerivationScript.parse('start c1 c2 c3\ncommute 1\ncommute 0\nexpect c2 c1 c3')
    with pytest.raises(IllegalMove) as info:
        replay(script)
    assert info.value.step == 1
    assert str(info.value).startswith('step 1: ')


def test_replay_mismatch():
    script = DerivationScript.parse('start c1 c3\ncommute 0\nexpect c1 c3')
    with pytest.raises(DerivationMismatch) as info:
        replay(script)
    assert info.value.actual == parse_word('c3 c1')
    script = DerivationScript.parse('start c1 c3\ncheck c3 c1\ncommute 0\nexpect c3 c1')
    with pytest.raises(DerivationMismatch) as info:
        replay(script)
    assert info.value.step == 1


def test_replay_rejects_homology_change():
    registry = CurveRegistry()
    registry.declare('c1', 'c2', 'disjoint')
    script = DerivationScript.parse('start c1 c2\ncommute 0\nexpect c2 c1')
    with pytest.raises(IllegalMove) as info:
        replay(script, registry=registry)
    assert 'homology' in str(info.value)
    assert replay(script, registry=registry, shadow=False) == parse_word('c2 c1')


@pytest.mark.parametrize('text', [
    'commute 0\nexpect c1',
    'start c1\ncommute 0',
    'start c1\nexpect c1\ncommute 0',
    'start c1\nsubst 0 chain sideways\nexpect c1',
    'start c1\nfrobnicate 2\nexpect c1',
])
def test_script_parse_errors(text):
    with pytest.raises(ParseError):
        DerivationScript.parse(text)


def test_search_depth_default():
    text = 'start c1 c3 c5\nsearch c5 c3 c1\nexpect c5 c3 c1'
    assert replay(DerivationScript.parse(text)) == parse_word('c5 c3 c1')
    with pytest.raises(IllegalMove):
        replay(DerivationScript.parse(text, depth=2))


def test_free_reduce_cancels_inverse_suffix():
    w = parse_word('123451234123121(21)^-6(21)^6')
    assert free_reduce(w) == parse_word('123451234123121')


def test_free_reduce_idempotent(rng):
    symbols = [c(1), c(2), c(3), b(0), named('t_c')]
    for _ in range(30):
        w = TwistWord(rng.choice(symbols)._replace(exponent=rng.choice((1, -1)))
                      for _ in range(rng.randint(0, 12)))
        once = free_reduce(w)
        assert free_reduce(once) == once
        assert all(not once[k].is_inverse_of(once[k + 1]) for k in range(len(once) - 1))


def test_unbound_symbols_are_configuration_errors():
    cfg = standard_chain_classes(2)
    with pytest.raises(ConfigurationError):
        conjugate_expand(b(4), '12', cfg)
    with pytest.raises(ConfigurationError):
        homology_shadow_equal('c1 b4', 'b4 c1', cfg)
