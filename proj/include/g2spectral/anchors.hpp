#pragma once

#include <array>
#include <string_view>

namespace g2spectral {

// Anchor strings used by report entries; emit_report rejects entries whose
// anchor is not listed here, which keeps the suites and this manifest in
// sync.
inline constexpr std::array<std::string_view, 26> kCheckAnchors = {
    "whose (orthonormal) columns",
    "order six involution",
    "then g is the standard Euclidean metric",
    "the entire space E is an eigenspace",
    "has an open orbit",
    "the characteristic polynomial has the form",
    "so we may write",
    "depending only on lambda = zeta^6",
    "smooth, with genus 5(6k+1)",
    "The real dimension of the moduli",
    "given by the vanishing of the discriminant",
    "totally branched over 0 and infinity",
    "g_{C1} = 12k+2",
    "has dimension 12k+3",
    "have degree",
    "the genus of Sigma-hat",
    "satisfies the Lax pair equation",
    "a skew-symmetric bilinear form",
    "zero-eigenvector of",
    "K_alpha and A_zeta commute",
    "Hence a2 divides s(alpha)",
    "with multiplicity two",
    "the eigenspaces E+, E- are Lagrangian",
    "We have the following commutative diagram",
    "exhibits a three-to-one cover",
    "eigenline bundle symmetries",
};

bool anchor_known(std::string_view anchor);

}  // namespace g2spectral
