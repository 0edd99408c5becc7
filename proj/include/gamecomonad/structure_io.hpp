#pragma once

#include <gamecomonad/structure.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace gamecomonad {

namespace detail {
    inline std::vector<std::string> split_tokens(std::string_view line)
    {
        std::vector<std::string> tokens;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
                ++i;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
                ++j;
            if (j > i)
                tokens.emplace_back(line.substr(i, j - i));
            i = j;
        }
        return tokens;
    }

    inline std::string_view strip_comment(std::string_view line)
    {
        auto hash = line.find('#');
        return hash == std::string_view::npos ? line : line.substr(0, hash);
    }
} // namespace detail

/// Parses the line-oriented structure format:
///
///     vocab <name> <arity>
///     elem <id>
///     rel <name> <id>...
///     start <id>
///
/// `#` starts a comment. Symbols and elements must be declared before use.
inline Structure parse_structure(std::string_view text)
{
    Vocabulary vocab;
    std::vector<std::string> elems;
    struct PendingTuple {
        std::size_t line;
        std::string symbol;
        std::vector<std::string> args;
    };
    std::vector<PendingTuple> rels;
    std::optional<std::pair<std::size_t, std::string>> start;

    // Symbols and elements may be interleaved with tuples, but a tuple may only
    // mention what was declared above it.
    std::unordered_map<std::string, std::size_t> seen_elems;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        auto tokens = detail::split_tokens(detail::strip_comment(line));
        if (tokens.empty())
            continue;
        auto & kw = tokens[0];
        if (kw == "vocab") {
            if (tokens.size() != 3)
                throw ParseError(line_no, "expected 'vocab <name> <arity>'");
            std::size_t arity = 0;
            try {
                std::size_t used = 0;
                long long a = std::stoll(tokens[2], &used);
                if (used != tokens[2].size() || a <= 0)
                    throw ParseError(line_no, "arity must be a positive integer");
                arity = static_cast<std::size_t>(a);
            }
            catch (const std::logic_error &) {
                throw ParseError(line_no, "arity must be a positive integer");
            }
            if (vocab.find(tokens[1]))
                throw ParseError(line_no, "duplicate symbol '" + tokens[1] + "'");
            vocab.add(tokens[1], arity);
        }
        else if (kw == "elem") {
            if (tokens.size() != 2)
                throw ParseError(line_no, "expected 'elem <id>'");
            if (seen_elems.count(tokens[1]))
                throw ParseError(line_no, "duplicate element '" + tokens[1] + "'");
            seen_elems.emplace(tokens[1], elems.size());
            elems.push_back(tokens[1]);
        }
        else if (kw == "rel") {
            if (tokens.size() < 2)
                throw ParseError(line_no, "expected 'rel <name> <id>...'");
            auto sym = vocab.find(tokens[1]);
            if (! sym)
                throw ParseError(line_no, "unknown symbol '" + tokens[1] + "'");
            auto arity = vocab[*sym].arity;
            if (tokens.size() - 2 != arity)
                throw ParseError(line_no, "arity mismatch for '" + tokens[1] + "': expected " + std::to_string(arity) +
                        ", got " + std::to_string(tokens.size() - 2));
            for (std::size_t i = 2; i < tokens.size(); ++i)
                if (! seen_elems.count(tokens[i]))
                    throw ParseError(line_no, "unknown element '" + tokens[i] + "'");
            rels.push_back({line_no, tokens[1], {tokens.begin() + 2, tokens.end()}});
        }
        else if (kw == "start") {
            if (tokens.size() != 2)
                throw ParseError(line_no, "expected 'start <id>'");
            if (start)
                throw ParseError(line_no, "duplicate start declaration");
            if (! seen_elems.count(tokens[1]))
                throw ParseError(line_no, "unknown element '" + tokens[1] + "'");
            start.emplace(line_no, tokens[1]);
        }
        else
            throw ParseError(line_no, "unknown directive '" + kw + "'");
    }

    Structure s(std::move(vocab));
    for (auto & e : elems)
        s.add_element(e);
    for (auto & r : rels) {
        Tuple t;
        for (auto & a : r.args)
            t.push_back(*s.find_element(a));
        s.add_tuple(r.symbol, std::move(t));
    }
    if (start)
        s.set_point(*s.find_element(start->second));
    return s;
}

inline std::string serialize_structure(const Structure & s)
{
    std::ostringstream out;
    for (auto & sym : s.vocabulary())
        out << "vocab " << sym.name << ' ' << sym.arity << '\n';
    for (auto & n : s.names())
        out << "elem " << n << '\n';
    for (std::size_t i = 0; i < s.vocabulary().size(); ++i)
        for (auto & t : s.tuples(i)) {
            out << "rel " << s.vocabulary()[i].name;
            for (auto e : t)
                out << ' ' << s.name(e);
            out << '\n';
        }
    if (auto p = s.point())
        out << "start " << s.name(*p) << '\n';
    return out.str();
}

inline std::string read_text_file(const std::string & path)
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw InvalidArgument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Structure load_structure(const std::string & path) { return parse_structure(read_text_file(path)); }

} // namespace gamecomonad
