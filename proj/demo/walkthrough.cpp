// walkthrough.cpp - end-to-end tour: deal, verify, tamper, detect, recover
#include <iostream>

#include "vss/vss.hpp"

using namespace vss;

int main() {
    // 3-of-4 Shamir sharing over GF(31) of the secret 7, using the fixed
    // polynomial g(x) = 7 + 5x + 3x^2, so the run is fully reproducible.
    ShamirInstance inst(31, 3, 4);
    std::vector<std::uint32_t> coeffs = {5, 3};
    std::vector<PlainShare> plain = shamir_deal(7, inst, coeffs);

    std::cout << "plain shares (g(i) at width " << inst.l << "):\n";
    for (const PlainShare& s : plain)
        std::cout << "  P" << s.owner << "  " << s.secret_part.str() << "  (value "
                  << from_bits(s.secret_part) << ")\n";

    // Verification sets: all pairs inside any authorized 3-subset.
    VerificationStructure vs = build_vtn_structure(2, 3, 4);
    std::cout << "verification sets:";
    for (const VerificationSet& v : vs.sets) {
        std::cout << " {";
        for (std::size_t i = 0; i < v.members.size(); ++i)
            std::cout << (i ? "," : "") << v.members[i];
        std::cout << "}";
    }
    std::cout << "\n";

    // Control parts come from the bundled width-5 table; the constrained
    // strategy solves for controls that satisfy every pair round.
    ControlFunction f = ControlFunction::from_table(example_table());
    DealOutcome outcome = assign_controls(plain, vs, f, Combiner::xor_fold(),
                                          Combiner::xor_fold(), DealingStrategy::constrained);
    const auto& shares = std::get<std::vector<ExtendedShare>>(outcome);
    std::cout << "extended shares (secret part + control part):\n";
    for (const ExtendedShare& s : shares)
        std::cout << "  P" << s.owner << "  " << s.payload().str() << "\n";

    // Participants 1,2,3 verify together: every pair round must pass.
    AuthorizedSet auth({1, 2, 3});
    ProtocolReport report =
        run_protocol(auth, vs, shares, f, Combiner::xor_fold(), Combiner::xor_fold());
    std::cout << "verification for {1,2,3}:\n" << render_report(report);

    // Flip one control bit of P2's share: some round containing P2 fails.
    std::vector<ExtendedShare> tampered = shares;
    tampered[1].control_part.flip_bit(0);
    ProtocolReport bad =
        run_protocol(auth, vs, tampered, f, Combiner::xor_fold(), Combiner::xor_fold());
    std::cout << "after flipping P2's control bit:\n" << render_report(bad);

    // Recovery combines the secret parts with the scheme's own combiner;
    // verification gates it unless explicitly skipped.
    RecoverOutcome recovered = recover_secret(auth, shares, inst, true, vs, f,
                                              Combiner::xor_fold(), Combiner::xor_fold());
    const BitVector& secret = std::get<RecoverSuccess>(recovered).secret_bits;
    std::cout << "recovered secret: " << from_bits(secret) << " (" << secret.str() << ")\n";
    return 0;
}
