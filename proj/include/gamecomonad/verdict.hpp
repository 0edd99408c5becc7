#pragma once

#include <gamecomonad/certificate.hpp>
#include <gamecomonad/equivalence.hpp>

#include <string>
#include <string_view>

namespace gamecomonad {

/// A decision together with the certificate text emitted for it (empty when
/// no finite witness is produced for that verdict).
struct Verdict {
    bool holds = false;
    std::string certificate;
};

/// One direction of an existential game with its certificate section.
inline Verdict decide_exists_certified(const Structure & a, const Structure & b, std::size_t k, Comonad c,
    const Caps & caps = {}, bool reversed = false)
{
    Verdict v;
    CertificateHeader h{"", to_string(c), k, reversed, SpoilerMoves::a_only};
    if (c == Comonad::pebble) {
        auto d = decide_exist_pebble(a, b, k, caps.families);
        v.holds = d.holds;
        if (d.holds) {
            h.kind = "family";
            v.certificate = family_certificate(a, b, d.family, h);
        }
        return v;
    }
    auto ta = play_tree(a, k, c, caps.plays);
    auto tb = play_tree(b, k, c, caps.plays);
    std::vector<Elem> table;
    std::vector<Spoil> spoiler;
    if (c == Comonad::ef) {
        auto d = decide_exist_ef(a, b, k, caps.positions, caps.plays);
        v.holds = d.holds;
        if (d.holds)
            table = d.strategy->table;
        else
            spoiler = std::move(d.spoiler);
    }
    else {
        auto d = decide_sim_k(a, b, k, caps.positions, caps.plays);
        v.holds = d.holds;
        table = std::move(d.table);
        spoiler = std::move(d.game.spoiler);
    }
    h.kind = v.holds ? "cokleisli" : "spoiler";
    v.certificate = v.holds ? cokleisli_certificate(b, ta, table, h) : spoiler_certificate(ta, tb, spoiler, h);
    return v;
}

/// Decides one of the equivalence modes: exists, both, backforth, iso, theta.
inline Verdict decide_certified(const Structure & a, const Structure & b, std::size_t k, Comonad c,
    std::string_view mode, const Caps & caps = {})
{
    require_same_vocabulary(a, b);
    if (k == 0)
        throw InvalidArgument("k must be at least 1");
    if (mode == "exists")
        return decide_exists_certified(a, b, k, c, caps);
    if (mode == "both") {
        auto forward = decide_exists_certified(a, b, k, c, caps);
        auto backward = decide_exists_certified(b, a, k, c, caps, true);
        return {forward.holds && backward.holds, forward.certificate + backward.certificate};
    }
    Verdict v;
    if (mode == "backforth") {
        auto res = solve_back_forth(a, b, k, c, caps);
        v.holds = res.holds;
        CertificateHeader h{"", to_string(c), k, false, SpoilerMoves::both};
        if (c == Comonad::pebble) {
            if (v.holds) {
                h.kind = "family";
                v.certificate = family_certificate(a, b, res.family, h);
            }
            return v;
        }
        auto ta = play_tree(a, k, c, caps.plays);
        auto tb = play_tree(b, k, c, caps.plays);
        h.kind = v.holds ? "duplicator" : "spoiler";
        v.certificate = v.holds ? duplicator_certificate(ta, tb, res.game.duplicator, h)
                                : spoiler_certificate(ta, tb, res.game.spoiler, h);
        return v;
    }
    if (mode == "iso") {
        auto res = decide_cokleisli_iso(a, b, k, c, caps);
        v.holds = res.holds;
        if (v.holds) {
            auto ta = play_tree(a, k, c, caps.plays);
            auto tb = play_tree(b, k, c, caps.plays);
            v.certificate = iso_certificate(a, b, ta, tb, res, {"iso", to_string(c), k, false});
        }
        return v;
    }
    if (mode == "theta") {
        v.holds = theta_fixpoint(a, b, k, c, caps).nonempty();
        return v;
    }
    throw InvalidArgument("unknown mode '" + std::string(mode) + "' (expected exists, both, backforth, iso or theta)");
}

} // namespace gamecomonad
