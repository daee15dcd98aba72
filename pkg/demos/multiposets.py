# Several partial orders on one set, nested by a template poset.
#
#   python3 demos/multiposets.py

from ramsey_posets.amalgamation import two_generated, wtc_check
from ramsey_posets.census import posets_up_to_iso
from ramsey_posets.multiposets import (
    Template,
    TemplateClass,
    common_extension,
    from_pairs,
    pairwise_consistency_violation,
    validate_multiposet,
    wtc_tau_for_template,
)
from ramsey_posets.structures import FinitePoset

two = Template(FinitePoset.antichain(2))

# a pair ordered one way by the first relation and the other way by the second
clash = from_pairs(2, [[(0, 1)], [(1, 0)]])
print("clash:", validate_multiposet(clash, two))

# a 4-cycle spread over two relations: every pair looks fine on its own
cycle = from_pairs(4, [[(0, 1), (2, 3)], [(1, 2), (3, 0)]])
print("4-cycle pairwise check:", pairwise_consistency_violation(cycle))
print("4-cycle common extension:", common_extension(cycle))
print("4-cycle verdict:", validate_multiposet(cycle, two))

# the weak triangle condition, per template on up to 3 points
for n in (1, 2, 3):
    for tp in posets_up_to_iso(n):
        cls = TemplateClass(Template(tp))
        tau = wtc_tau_for_template(cls.template)
        sigmas = two_generated(cls.members(3))
        inst = wtc_check(sigmas, tau, cls)
        print(f"template up rows {tp.up}: {len(sigmas)} pair types, all split through a middle point"
              f" ({len(inst.witnesses)} witnesses)")
