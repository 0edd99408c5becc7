// Command-line front end: hom, equiv, param, oracle, laws, eval, sample, verify.
//
// Exit codes: 0 true / success, 1 false, 2 usage or input error, 3 cap exceeded.

#include <gamecomonad/gamecomonad.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace gamecomonad;

namespace {

struct Options {
    std::string game = "ef";
    std::string mode = "exists";
    std::string comonad = "ef";
    std::string parameter;
    std::string fragment = "ep";
    std::string formula;
    std::string vocab = "R/2";
    std::string certificate;
    std::vector<std::string> env;
    std::vector<std::string> inputs;
    std::size_t k = 2;
    std::size_t trunc = 3;
    std::size_t count = 10;
    std::size_t vars = 0;
    std::size_t oracle_cap = default_oracle_cap;
    std::uint64_t seed = 1;
    Caps caps;
};

/// Collects the report so that it is printed in one piece.
struct Report {
    std::ostringstream out;

    void header(const std::string & command, const Options & o)
    {
        out << "command: " << command << "\n";
        out << "seed: " << o.seed << "\n";
        out << "caps: plays=" << o.caps.plays << " positions=" << o.caps.positions << " strategies=" << o.caps.strategies
            << " families=" << o.caps.families << " oracle-vertices=" << o.oracle_cap << "\n";
    }

    int verdict(bool holds)
    {
        out << "result: " << (holds ? "true" : "false") << "\n";
        return holds ? 0 : 1;
    }
};

void write_file(const std::string & path, const std::string & text)
{
    std::ofstream f(path, std::ios::binary);
    if (! f)
        throw InvalidArgument("cannot write '" + path + "'");
    f << text;
}

Vocabulary parse_vocab_flag(const std::string & text)
{
    Vocabulary v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto slash = item.find('/');
        if (slash == std::string::npos)
            throw InvalidArgument("vocabulary entries look like R/2, got '" + item + "'");
        std::size_t arity = 0;
        try {
            arity = std::stoul(item.substr(slash + 1));
        }
        catch (const std::exception &) {
            throw InvalidArgument("bad arity in '" + item + "'");
        }
        v.add(item.substr(0, slash), arity);
    }
    return v;
}

int run_hom(const Options & o, Report & r)
{
    auto a = load_structure(o.inputs.at(0));
    auto b = load_structure(o.inputs.at(1));
    require_same_vocabulary(a, b);
    auto f = find_hom(a, b);
    if (f) {
        for (Elem x = 0; x < a.size(); ++x)
            r.out << "map " << a.name(x) << " -> " << b.name((*f)[x]) << "\n";
        if (! o.certificate.empty()) {
            write_file(o.certificate, hom_certificate(a, b, *f));
            r.out << "certificate: " << o.certificate << "\n";
        }
    }
    else if (! o.certificate.empty())
        r.out << "certificate: none (no finite witness for the absence of a homomorphism)\n";
    return r.verdict(f.has_value());
}

int run_equiv(const Options & o, Report & r)
{
    auto a = load_structure(o.inputs.at(0));
    auto b = load_structure(o.inputs.at(1));
    require_same_vocabulary(a, b);
    auto c = parse_comonad(o.game);
    if (o.k == 0)
        throw InvalidArgument("k must be at least 1");
    r.out << "game: " << to_string(c) << "\nmode: " << o.mode << "\nk: " << o.k << "\n";

    Verdict v;
    if (o.mode == "both") {
        auto forward = decide_exists_certified(a, b, o.k, c, o.caps);
        auto backward = decide_exists_certified(b, a, o.k, c, o.caps, true);
        r.out << "forward: " << (forward.holds ? "true" : "false") << "\nbackward: " << (backward.holds ? "true" : "false")
              << "\n";
        v = {forward.holds && backward.holds, forward.certificate + backward.certificate};
    }
    else if (o.mode == "theta") {
        auto res = theta_fixpoint(a, b, o.k, c, o.caps);
        r.out << "strategies-ab: " << res.strategies_ab << "\nstrategies-ba: " << res.strategies_ba
              << "\nfixpoint-size: " << res.fixpoint.size() << "\npartner-size: " << res.partner.size()
              << "\niterations: " << res.iterations << "\n";
        v.holds = res.nonempty();
    }
    else
        v = decide_certified(a, b, o.k, c, o.mode, o.caps);

    if (! o.certificate.empty()) {
        if (v.certificate.empty())
            r.out << "certificate: none (no finite witness is produced for this verdict)\n";
        else {
            write_file(o.certificate, v.certificate);
            r.out << "certificate: " << o.certificate << "\n";
        }
    }
    return r.verdict(v.holds);
}

int run_param(const Options & o, Report & r)
{
    auto a = load_structure(o.inputs.at(0));
    auto c = parse_comonad(o.comonad);
    r.out << "comonad: " << to_string(c) << "\n";
    std::string cert;
    if (c == Comonad::ef) {
        auto res = coalgebra_number_ef(a);
        r.out << "kappa: " << res.kappa << "\n" << serialize_forest(a, res.witness.cover);
        cert = coalgebra_certificate(a, res.witness.coalgebra, "ef", [&](const EfPlay & s) { return play_name(a, s); });
    }
    else if (c == Comonad::pebble) {
        auto res = coalgebra_number_pebble(a);
        r.out << "kappa: " << res.kappa << "\n"
              << serialize_pebbling(a, res.witness.cover) << serialize_decomposition(a, res.witness.decomposition);
        cert = coalgebra_certificate(a, res.witness.coalgebra, "pebble",
            [&](const PebblePlay & s) { return play_name(a, s); });
    }
    else {
        std::size_t depth = 0;
        try {
            depth = modal_depth(a);
        }
        catch (const CyclicStructure & e) {
            r.out << "kappa: none\nreason: " << e.what() << "\n";
            return 1;
        }
        r.out << "modal-depth: " << depth << "\n";
        try {
            auto res = coalgebra_number_modal(a);
            r.out << "kappa: " << res.kappa << "\n" << serialize_coalgebra(a, res.witness);
            cert = coalgebra_certificate(a, res.witness, "modal", [&](const ModalPath & p) { return path_name(a, p); });
        }
        catch (const NoCoalgebra & e) {
            r.out << "kappa: none\nreason: " << e.what() << "\n";
            return 1;
        }
    }
    if (! o.certificate.empty()) {
        write_file(o.certificate, cert);
        r.out << "certificate: " << o.certificate << "\n";
    }
    return 0;
}

int run_oracle(const Options & o, Report & r)
{
    auto a = load_structure(o.inputs.at(0));
    auto g = gaifman(a);
    std::size_t value = 0;
    if (o.parameter == "treedepth")
        value = oracle_treedepth(g, o.oracle_cap);
    else if (o.parameter == "treewidth")
        value = oracle_treewidth(g, o.oracle_cap);
    else
        throw InvalidArgument("oracle must be treedepth or treewidth");
    r.out << o.parameter << ": " << value << "\n";
    return 0;
}

int run_laws(const Options & o, Report & r)
{
    auto a = load_structure(o.inputs.at(0));
    auto c = parse_comonad(o.comonad);
    if (o.k == 0)
        throw InvalidArgument("k must be at least 1");
    LawReport rep;
    r.out << "comonad: " << to_string(c) << "\nk: " << o.k << "\n";
    if (c == Comonad::ef)
        rep = check_ef_laws(a, o.k, o.seed, 3, o.caps.plays);
    else if (c == Comonad::pebble) {
        r.out << "trunc: " << o.trunc << "\n";
        rep = check_pebble_laws(a, o.k, o.trunc, o.seed, 3, o.caps.plays);
    }
    else
        rep = check_modal_laws(a, o.k, o.seed, 3, o.caps.plays);
    r.out << "checks: " << rep.checks << "\n";
    if (! rep.ok)
        r.out << "failed-law: " << rep.law << "\ncounterexample: " << rep.counterexample << "\n";
    return r.verdict(rep.ok);
}

int run_eval(const Options & o, Report & r)
{
    auto a = load_structure(o.inputs.at(0));
    auto f = parse_formula(o.formula);
    std::map<std::string, Elem> env;
    for (auto & binding : o.env) {
        auto eq = binding.find('=');
        if (eq == std::string::npos)
            throw InvalidArgument("bindings look like x=a, got '" + binding + "'");
        auto e = a.find_element(binding.substr(eq + 1));
        if (! e)
            throw InvalidArgument("unknown element in binding '" + binding + "'");
        env[binding.substr(0, eq)] = *e;
    }
    r.out << "formula: " << to_string(f) << "\nrank: " << quantifier_rank(f) << "\n";
    return r.verdict(eval(a, f, env));
}

int run_sample(const Options & o, Report & r)
{
    SampleOptions so;
    so.fragment = parse_fragment(o.fragment);
    so.k = o.k;
    so.count = o.count;
    so.seed = o.seed;
    so.max_vars = o.vars;
    auto vocab = parse_vocab_flag(o.vocab);
    r.out << sampler_header(so) << "\n";
    for (auto & f : sample_formulas(vocab, so))
        r.out << to_string(f) << "\n";
    return 0;
}

int run_verify(const Options & o, Report & r)
{
    auto a = load_structure(o.inputs.at(0));
    auto b = o.inputs.size() > 1 ? load_structure(o.inputs.at(1)) : a;
    auto rep = verify_certificate(read_text_file(o.certificate), a, b);
    r.out << "sections: " << rep.sections << "\n";
    if (! rep.ok)
        r.out << "failure: " << rep.failure << "\n";
    return r.verdict(rep.ok);
}

void add_caps(CLI::App * sub, Options & o)
{
    sub->add_option("--play-cap", o.caps.plays, "Largest play universe or play tree")->check(CLI::PositiveNumber);
    sub->add_option("--position-cap", o.caps.positions, "Most game positions explored")->check(CLI::PositiveNumber);
    sub->add_option("--strategy-cap", o.caps.strategies, "Most strategy tables enumerated")->check(CLI::PositiveNumber);
    sub->add_option("--family-cap", o.caps.families, "Most partial maps in a pebble family")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Seed for all randomness");
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Game comonads: homomorphisms, model-comparison games, coalgebra numbers"};
    app.require_subcommand(1);
    Options o;

    auto hom = app.add_subcommand("hom", "Search for a homomorphism A -> B");
    hom->add_option("A", o.inputs, "Structures A B")->required()->expected(2);
    hom->add_option("--certificate", o.certificate, "Write a certificate to this path");
    add_caps(hom, o);

    auto equiv = app.add_subcommand("equiv", "Decide a game or equivalence between A and B");
    equiv->add_option("--game", o.game, "ef, pebble or modal");
    equiv->add_option("--mode", o.mode, "exists, both, backforth, iso or theta");
    equiv->add_option("-k,--pebbles,--rounds,--depth", o.k, "Resource parameter k")->check(CLI::PositiveNumber);
    equiv->add_option("--certificate", o.certificate, "Write a certificate to this path");
    equiv->add_option("A", o.inputs, "Structures A B")->required()->expected(2);
    add_caps(equiv, o);

    auto param = app.add_subcommand("param", "Coalgebra number with a witness");
    param->add_option("--comonad", o.comonad, "ef, pebble or modal");
    param->add_option("--certificate", o.certificate, "Write the coalgebra as a certificate");
    param->add_option("A", o.inputs, "Structure")->required()->expected(1);
    add_caps(param, o);

    auto oracle = app.add_subcommand("oracle", "Brute-force tree-depth or tree-width of the Gaifman graph");
    oracle->add_option("parameter", o.parameter, "treedepth or treewidth")->required();
    oracle->add_option("A", o.inputs, "Structure")->required()->expected(1);
    oracle->add_option("--vertex-cap", o.oracle_cap, "Largest graph accepted")->check(CLI::PositiveNumber);
    add_caps(oracle, o);

    auto laws = app.add_subcommand("laws", "Check the comonad laws pointwise");
    laws->add_option("--comonad", o.comonad, "ef, pebble or modal");
    laws->add_option("-k", o.k, "Resource parameter k")->check(CLI::PositiveNumber);
    laws->add_option("--trunc", o.trunc, "Longest pebble play considered")->check(CLI::PositiveNumber);
    laws->add_option("A", o.inputs, "Structure")->required()->expected(1);
    add_caps(laws, o);

    auto ev = app.add_subcommand("eval", "Evaluate a formula in A");
    ev->add_option("-f,--formula", o.formula, "Formula text")->required();
    ev->add_option("--env", o.env, "Free variable bindings x=a");
    ev->add_option("A", o.inputs, "Structure")->required()->expected(1);
    add_caps(ev, o);

    auto sample = app.add_subcommand("sample", "Sample formulas deterministically");
    sample->add_option("--fragment", o.fragment, "ep, full, counting, modal-ep, modal or modal-counting");
    sample->add_option("-k", o.k, "Quantifier rank bound");
    sample->add_option("--count", o.count, "Number of formulas");
    sample->add_option("--vocab", o.vocab, "Vocabulary such as R/2,S/1");
    sample->add_option("--vars", o.vars, "Restrict to this many variable tokens (0 = unrestricted)");
    add_caps(sample, o);

    auto verify = app.add_subcommand("verify", "Re-check a certificate without solving");
    verify->add_option("--certificate", o.certificate, "Certificate path")->required();
    verify->add_option("A", o.inputs, "Structures A [B]")->required()->expected(1, 2);
    add_caps(verify, o);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Report r;
    auto sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    r.header(name, o);
    int code = 0;
    try {
        if (name == "hom")
            code = run_hom(o, r);
        else if (name == "equiv")
            code = run_equiv(o, r);
        else if (name == "param")
            code = run_param(o, r);
        else if (name == "oracle")
            code = run_oracle(o, r);
        else if (name == "laws")
            code = run_laws(o, r);
        else if (name == "eval")
            code = run_eval(o, r);
        else if (name == "sample")
            code = run_sample(o, r);
        else
            code = run_verify(o, r);
    }
    catch (const CapExceeded & e) {
        std::cout << r.out.str() << "error: " << e.what() << "\n";
        return 3;
    }
    catch (const std::exception & e) {
        std::cout << r.out.str() << "error: " << e.what() << "\n";
        return 2;
    }
    std::cout << r.out.str();
    return code;
}
