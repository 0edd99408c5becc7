#pragma once

#include <gamecomonad/coalgebra.hpp>
#include <gamecomonad/equivalence.hpp>
#include <gamecomonad/hom.hpp>
#include <gamecomonad/structure_io.hpp>

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace gamecomonad {

/// Certificates are plain text made of sections:
///
///     certificate <kind> game=<ef|pebble|modal|none> k=<k> dir=<ab|ba> [moves=a|both]
///     <body lines>
///     end
///
/// Kinds and their body lines:
///   hom         map <a> -> <b>                     a homomorphism
///   cokleisli   map <play> -> <b>                  a coKleisli homomorphism C_k A -> B
///   iso         map <play> -> <b>, inv <play> -> <a>   a coKleisli isomorphism
///   duplicator  reply <s> <t> A|B <move> -> <answer>
///   spoiler     spoil <s> <t> -> A|B <move>
///   family      part (a↦x) ...                     a positional pebble strategy
///   coalgebra   alpha <a> <play>                   a coalgebra A -> C_k A
///
/// With dir=ba the section speaks about (B, A) instead of (A, B).
struct CertificateHeader {
    std::string kind;
    std::string game = "none";
    std::size_t k = 0;
    bool reversed = false;
    SpoilerMoves moves = SpoilerMoves::a_only;
};

inline std::string header_line(const CertificateHeader & h)
{
    std::string out = "certificate " + h.kind + " game=" + h.game + " k=" + std::to_string(h.k) +
        " dir=" + (h.reversed ? "ba" : "ab");
    if (h.kind == "duplicator" || h.kind == "spoiler" || h.kind == "family")
        out += std::string(" moves=") + (h.moves == SpoilerMoves::both ? "both" : "a");
    return out + "\n";
}

inline std::string hom_certificate(const Structure & a, const Structure & b, const ElemMap & f, bool reversed = false)
{
    std::string out = header_line({"hom", "none", 0, reversed});
    for (Elem x = 0; x < a.size(); ++x)
        out += "map " + a.name(x) + " -> " + b.name(f[x]) + "\n";
    return out + "end\n";
}

/// `table` gives the image of every node of `ta` except a virtual root.
inline std::string cokleisli_certificate(const Structure & b, const PlayTree & ta, const std::vector<Elem> & table,
    const CertificateHeader & h)
{
    std::string out = header_line(h);
    std::size_t skip = ta.virtual_root ? 1 : 0;
    for (std::size_t s = skip; s < ta.size(); ++s)
        out += "map " + ta.names[s] + " -> " + b.name(table[s - skip]) + "\n";
    return out + "end\n";
}

inline std::string iso_certificate(const Structure & a, const Structure & b, const PlayTree & ta, const PlayTree & tb,
    const CoKleisliIso & iso, const CertificateHeader & h)
{
    std::string out = header_line(h);
    std::size_t skip = ta.virtual_root ? 1 : 0;
    for (std::size_t s = skip; s < ta.size(); ++s)
        out += "map " + ta.names[s] + " -> " + b.name(iso.forward[s - skip]) + "\n";
    for (std::size_t t = skip; t < tb.size(); ++t)
        out += "inv " + tb.names[t] + " -> " + a.name(iso.backward[t - skip]) + "\n";
    return out + "end\n";
}

inline std::string duplicator_certificate(const PlayTree & ta, const PlayTree & tb, const std::vector<Reply> & replies,
    const CertificateHeader & h)
{
    std::string out = header_line(h);
    for (auto & r : replies) {
        auto & own = r.side == Side::a ? ta : tb;
        auto & other = r.side == Side::a ? tb : ta;
        out += "reply " + ta.names[r.s] + " " + tb.names[r.t] + " " + side_char(r.side) + " " + own.names[r.move] +
            " -> " + other.names[r.response] + "\n";
    }
    return out + "end\n";
}

inline std::string spoiler_certificate(const PlayTree & ta, const PlayTree & tb, const std::vector<Spoil> & spoils,
    const CertificateHeader & h)
{
    std::string out = header_line(h);
    for (auto & sp : spoils) {
        auto & own = sp.side == Side::a ? ta : tb;
        out += "spoil " + ta.names[sp.s] + " " + tb.names[sp.t] + " -> " + side_char(sp.side) + " " + own.names[sp.move] +
            "\n";
    }
    return out + "end\n";
}

inline std::string family_certificate(const Structure & a, const Structure & b, const StrategyFamily & family,
    const CertificateHeader & h)
{
    std::string out = header_line(h);
    for (auto & p : family.parts)
        out += part_line(a, b, p) + "\n";
    return out + "end\n";
}

template <typename Play, typename Name>
std::string coalgebra_certificate(const Structure & a, const Coalgebra<Play> & c, const std::string & game, Name name)
{
    std::string out = header_line({"coalgebra", game, c.k, false});
    for (Elem v = 0; v < a.size(); ++v)
        out += "alpha " + a.name(v) + " " + name(c.alpha[v]) + "\n";
    return out + "end\n";
}

struct VerifyReport {
    bool ok = false;
    std::size_t sections = 0;
    std::string failure;
};

namespace detail {
    struct CertificateSection {
        CertificateHeader header;
        std::size_t line = 0;
        std::vector<std::vector<std::string>> body;
    };

    inline std::vector<CertificateSection> parse_certificate(std::string_view text)
    {
        std::vector<CertificateSection> sections;
        bool open = false;
        std::size_t line_no = 0, pos = 0;
        while (pos <= text.size()) {
            auto nl = text.find('\n', pos);
            auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
            pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
            ++line_no;
            auto tokens = split_tokens(strip_comment(line));
            if (tokens.empty())
                continue;
            if (tokens[0] == "certificate") {
                if (open)
                    throw ParseError(line_no, "section not closed with 'end'");
                if (tokens.size() < 2)
                    throw ParseError(line_no, "missing certificate kind");
                CertificateSection s;
                s.line = line_no;
                s.header.kind = tokens[1];
                for (std::size_t i = 2; i < tokens.size(); ++i) {
                    auto eq = tokens[i].find('=');
                    if (eq == std::string::npos)
                        throw ParseError(line_no, "expected key=value, got '" + tokens[i] + "'");
                    auto key = tokens[i].substr(0, eq), value = tokens[i].substr(eq + 1);
                    if (key == "game")
                        s.header.game = value;
                    else if (key == "k") {
                        try {
                            s.header.k = std::stoul(value);
                        }
                        catch (const std::exception &) {
                            throw ParseError(line_no, "bad k '" + value + "'");
                        }
                    }
                    else if (key == "dir") {
                        if (value != "ab" && value != "ba")
                            throw ParseError(line_no, "dir must be ab or ba");
                        s.header.reversed = value == "ba";
                    }
                    else if (key == "moves") {
                        if (value != "a" && value != "both")
                            throw ParseError(line_no, "moves must be a or both");
                        s.header.moves = value == "both" ? SpoilerMoves::both : SpoilerMoves::a_only;
                    }
                    else
                        throw ParseError(line_no, "unknown header key '" + key + "'");
                }
                sections.push_back(std::move(s));
                open = true;
            }
            else if (tokens[0] == "end") {
                if (! open)
                    throw ParseError(line_no, "'end' outside a section");
                open = false;
            }
            else {
                if (! open)
                    throw ParseError(line_no, "line outside a section");
                sections.back().body.push_back(std::move(tokens));
            }
        }
        if (open)
            throw ParseError(line_no, "last section not closed with 'end'");
        return sections;
    }

    inline Elem element(const Structure & a, const std::string & name)
    {
        auto e = a.find_element(name);
        if (! e)
            throw InvalidArgument("unknown element '" + name + "'");
        return *e;
    }

    inline std::size_t node(const PlayTree & t, const std::string & name)
    {
        auto n = t.find(name);
        if (! n)
            throw InvalidArgument("unknown play '" + name + "'");
        return *n;
    }

    /// Reads `map <play> -> <elem>` style lines into a table over the nodes of
    /// `t` (virtual root excluded). Every play must appear exactly once.
    inline std::vector<Elem> read_table(const std::vector<std::vector<std::string>> & body, const std::string & keyword,
        const PlayTree & t, const Structure & target)
    {
        std::size_t skip = t.virtual_root ? 1 : 0;
        std::vector<Elem> table(t.size() - skip, 0);
        std::vector<char> seen(t.size(), 0);
        for (auto & line : body) {
            if (line[0] != keyword)
                continue;
            if (line.size() != 4 || line[2] != "->")
                throw InvalidArgument("expected '" + keyword + " <play> -> <elem>'");
            auto n = node(t, line[1]);
            if (n < skip || seen[n])
                throw InvalidArgument("play '" + line[1] + "' listed twice or not allowed");
            seen[n] = 1;
            table[n - skip] = element(target, line[3]);
        }
        for (std::size_t n = skip; n < t.size(); ++n)
            if (! seen[n])
                throw InvalidArgument("table misses play " + t.names[n]);
        return table;
    }

    inline PlayTree tree_for(const Structure & a, const CertificateHeader & h)
    {
        if (h.k == 0)
            throw InvalidArgument("certificate needs k >= 1");
        return play_tree(a, h.k, parse_comonad(h.game));
    }

    inline WinningSet winning_set_for(const Structure & a, const PlayTree & ta, const Structure & b, const PlayTree & tb,
        const CertificateHeader & h)
    {
        auto mode = h.moves == SpoilerMoves::both ? BranchRelation::iso : BranchRelation::hom;
        if (parse_comonad(h.game) == Comonad::modal)
            return modal_winning_set(a, ta, b, tb, mode);
        return branch_winning_set(a, ta, b, tb, mode);
    }

    inline Structure universe_structure(const Structure & a, const PlayTree & t, Comonad c, std::size_t k)
    {
        return c == Comonad::ef ? ef_structure(a, k) : tree_structure(a, t);
    }

    inline Side read_side(const std::string & s)
    {
        if (s == "A")
            return Side::a;
        if (s == "B")
            return Side::b;
        throw InvalidArgument("side must be A or B, got '" + s + "'");
    }

    inline PebblePlay parse_pebble_play(const Structure & a, std::string text)
    {
        if (text.size() < 4 || text.front() != '[' || text.back() != ']')
            throw InvalidArgument("malformed pebble play '" + text + "'");
        text = text.substr(1, text.size() - 2);
        PebblePlay s;
        std::size_t pos = 0;
        while (pos < text.size()) {
            if (text[pos] != '(')
                throw InvalidArgument("malformed pebble move in '" + text + "'");
            auto comma = text.find(',', pos);
            auto close = text.find(')', comma);
            if (comma == std::string::npos || close == std::string::npos)
                throw InvalidArgument("malformed pebble move in '" + text + "'");
            unsigned p = static_cast<unsigned>(std::stoul(text.substr(pos + 1, comma - pos - 1)));
            s.push_back({p, element(a, text.substr(comma + 1, close - comma - 1))});
            pos = close + 1;
            if (pos < text.size() && text[pos] == ',')
                ++pos;
        }
        return s;
    }

    inline std::string verify_section(const CertificateSection & sec, const Structure & a0, const Structure & b0)
    {
        auto & h = sec.header;
        const Structure & a = h.reversed ? b0 : a0;
        const Structure & b = h.reversed ? a0 : b0;

        if (h.kind == "hom") {
            ElemMap f(a.size(), 0);
            std::vector<char> seen(a.size(), 0);
            for (auto & line : sec.body) {
                if (line.size() != 4 || line[0] != "map" || line[2] != "->")
                    return "expected 'map <a> -> <b>'";
                auto x = element(a, line[1]);
                seen[x] = 1;
                f[x] = element(b, line[3]);
            }
            if (std::find(seen.begin(), seen.end(), 0) != seen.end())
                return "map is not total";
            return check_hom(f, a, b) ? "" : "map is not a homomorphism";
        }

        if (h.kind == "cokleisli") {
            auto c = parse_comonad(h.game);
            if (c == Comonad::pebble)
                return "pebbling coKleisli maps are certified as families";
            auto ta = tree_for(a, h);
            auto table = read_table(sec.body, "map", ta, b);
            return check_hom(table, universe_structure(a, ta, c, h.k), b) ? "" : "table is not a homomorphism";
        }

        if (h.kind == "iso") {
            auto c = parse_comonad(h.game);
            auto ta = tree_for(a, h);
            auto tb = tree_for(b, h);
            auto f = read_table(sec.body, "map", ta, b);
            auto g = read_table(sec.body, "inv", tb, a);
            if (! check_hom(f, universe_structure(a, ta, c, h.k), b))
                return "forward table is not a homomorphism";
            if (! check_hom(g, universe_structure(b, tb, c, h.k), a))
                return "backward table is not a homomorphism";
            auto fs = coextend_table(ta, tb, f);
            auto gs = coextend_table(tb, ta, g);
            if (! fs || ! gs)
                return "coextension leaves the play tree";
            return mutually_inverse(ta, tb, *fs, *gs) ? "" : "coextensions are not mutually inverse";
        }

        if (h.kind == "duplicator" || h.kind == "spoiler") {
            auto ta = tree_for(a, h);
            auto tb = tree_for(b, h);
            auto w = winning_set_for(a, ta, b, tb, h);
            if (h.kind == "duplicator") {
                std::vector<Reply> replies;
                for (auto & line : sec.body) {
                    if (line.size() != 7 || line[0] != "reply" || line[5] != "->")
                        return "expected 'reply <s> <t> A|B <move> -> <answer>'";
                    auto side = read_side(line[3]);
                    auto & own = side == Side::a ? ta : tb;
                    auto & other = side == Side::a ? tb : ta;
                    replies.push_back({node(ta, line[1]), node(tb, line[2]), side, node(own, line[4]), node(other, line[6])});
                }
                return audit_duplicator(ta, tb, w, h.moves, replies);
            }
            std::vector<Spoil> spoils;
            for (auto & line : sec.body) {
                if (line.size() != 6 || line[0] != "spoil" || line[3] != "->")
                    return "expected 'spoil <s> <t> -> A|B <move>'";
                auto side = read_side(line[4]);
                spoils.push_back({node(ta, line[1]), node(tb, line[2]), side, node(side == Side::a ? ta : tb, line[5])});
            }
            return audit_spoiler(ta, tb, w, h.moves, spoils);
        }

        if (h.kind == "family") {
            StrategyFamily family;
            family.k = h.k;
            for (auto & line : sec.body) {
                if (line[0] != "part")
                    return "expected 'part (a↦x) ...'";
                PartialMap p;
                for (std::size_t i = 1; i < line.size(); ++i) {
                    auto & pair = line[i];
                    static const std::string arrow = "↦";
                    auto at = pair.find(arrow);
                    if (pair.size() < 2 || pair.front() != '(' || pair.back() != ')' || at == std::string::npos)
                        return "malformed pair '" + pair + "'";
                    p.emplace_back(element(a, pair.substr(1, at - 1)),
                        element(b, pair.substr(at + arrow.size(), pair.size() - at - arrow.size() - 1)));
                }
                family.parts.push_back(p);
            }
            std::sort(family.parts.begin(), family.parts.end());
            return audit_family(family, a, b, h.moves == SpoilerMoves::both);
        }

        if (h.kind == "coalgebra") {
            auto c = parse_comonad(h.game);
            std::map<Elem, std::string> plays;
            for (auto & line : sec.body) {
                if (line.size() != 3 || line[0] != "alpha")
                    return "expected 'alpha <a> <play>'";
                plays[element(a, line[1])] = line[2];
            }
            if (plays.size() != a.size())
                return "coalgebra map is not total";
            CoalgebraReport r;
            if (c == Comonad::pebble) {
                PebbleCoalgebra alpha{h.k, {}};
                for (auto & [v, text] : plays)
                    alpha.alpha.push_back(parse_pebble_play(a, text));
                r = check_coalgebra(a, alpha);
            }
            else {
                auto t = tree_for(a, h);
                if (c == Comonad::ef) {
                    EfCoalgebra alpha{h.k, {}};
                    for (auto & [v, text] : plays)
                        alpha.alpha.push_back(t.branch(node(t, text)));
                    r = check_coalgebra(a, alpha);
                }
                else {
                    ModalCoalgebra alpha{h.k, {}};
                    for (auto & [v, text] : plays)
                        alpha.alpha.push_back(tree_path(t, node(t, text)));
                    r = check_coalgebra(a, alpha);
                }
            }
            return r.ok ? "" : r.failure;
        }
        return "unknown certificate kind '" + h.kind + "'";
    }
} // namespace detail

/// Checks every section of a certificate against the structures, using only
/// homomorphism checks, strategy audits and coalgebra checks.
inline VerifyReport verify_certificate(std::string_view text, const Structure & a, const Structure & b)
{
    VerifyReport r;
    std::vector<detail::CertificateSection> sections;
    try {
        sections = detail::parse_certificate(text);
    }
    catch (const Error & e) {
        r.failure = e.what();
        return r;
    }
    if (sections.empty()) {
        r.failure = "certificate has no sections";
        return r;
    }
    for (auto & sec : sections) {
        std::string failure;
        try {
            failure = detail::verify_section(sec, a, b);
        }
        catch (const Error & e) {
            failure = e.what();
        }
        if (! failure.empty()) {
            r.failure = "section at line " + std::to_string(sec.line) + " (" + sec.header.kind + "): " + failure;
            return r;
        }
        ++r.sections;
    }
    r.ok = true;
    return r;
}

} // namespace gamecomonad
