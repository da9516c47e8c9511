#include "mctsbn/bif.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <unordered_map>

#include "mctsbn/errors.hpp"

namespace mctsbn {

namespace {

enum class TokKind { Word, Number, Punct, End };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;
    double value = 0;
    int line = 0, col = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    static bool is_punct(char c) {
        return c == '{' || c == '}' || c == '(' || c == ')' || c == '[' || c == ']' ||
               c == ',' || c == ';' || c == '|';
    }

    void skip_space_and_comments() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++col_;
                ++pos_;
            } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
                int start_line = line_;
                pos_ += 2;
                col_ += 2;
                while (pos_ + 1 < text_.size() &&
                       !(text_[pos_] == '*' && text_[pos_ + 1] == '/')) {
                    if (text_[pos_] == '\n') {
                        ++line_;
                        col_ = 1;
                    } else {
                        ++col_;
                    }
                    ++pos_;
                }
                if (pos_ + 1 >= text_.size())
                    throw ParseError("unterminated block comment", start_line);
                pos_ += 2;
                col_ += 2;
            } else {
                break;
            }
        }
    }

    void advance() {
        skip_space_and_comments();
        tok_ = Token{};
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= text_.size()) {
            tok_.kind = TokKind::End;
            return;
        }
        char c = text_[pos_];
        if (is_punct(c)) {
            tok_.kind = TokKind::Punct;
            tok_.text = std::string(1, c);
            ++pos_;
            ++col_;
            return;
        }
        if (c == '"') {
            ++pos_;
            ++col_;
            std::string word;
            while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') {
                word += text_[pos_++];
                ++col_;
            }
            if (pos_ >= text_.size() || text_[pos_] != '"')
                throw ParseError("unterminated string", tok_.line, tok_.col);
            ++pos_;
            ++col_;
            tok_.kind = TokKind::Word;
            tok_.text = word;
            return;
        }
        std::string atom;
        while (pos_ < text_.size()) {
            char a = text_[pos_];
            if (is_punct(a) || a == ' ' || a == '\t' || a == '\r' || a == '\n' || a == '"')
                break;
            atom += a;
            ++pos_;
            ++col_;
        }
        // An atom is a number only when it parses completely as one.
        char* end = nullptr;
        double v = std::strtod(atom.c_str(), &end);
        if (end == atom.c_str() + atom.size() && !atom.empty()) {
            tok_.kind = TokKind::Number;
            tok_.value = v;
        } else {
            tok_.kind = TokKind::Word;
        }
        tok_.text = atom;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class BifParser {
public:
    explicit BifParser(const std::string& text) : lex_(text) {}

    BayesianNetwork parse() {
        expect_word("network");
        net_name_ = expect(TokKind::Word).text;
        expect_punct("{");
        while (!at_punct("}")) {
            Token t = lex_.next();
            if (t.kind == TokKind::Word && t.text == "property") {
                skip_to_semicolon(t);
            } else {
                throw ParseError("unsupported construct '" + t.text + "' in network block",
                                 t.line, t.col);
            }
        }
        expect_punct("}");

        while (lex_.peek().kind != TokKind::End) {
            Token t = lex_.next();
            if (t.kind == TokKind::Word && t.text == "variable") {
                parse_variable();
            } else if (t.kind == TokKind::Word && t.text == "probability") {
                parse_probability();
            } else {
                throw ParseError("unsupported construct '" + t.text + "' at top level", t.line,
                                 t.col);
            }
        }
        return build();
    }

private:
    Token expect(TokKind kind) {
        Token t = lex_.next();
        if (t.kind != kind)
            throw ParseError("unexpected token '" + t.text + "'", t.line, t.col);
        return t;
    }

    void expect_word(const std::string& w) {
        Token t = lex_.next();
        if (t.kind != TokKind::Word || t.text != w)
            throw ParseError("expected '" + w + "', found '" + t.text + "'", t.line, t.col);
    }

    void expect_punct(const std::string& p) {
        Token t = lex_.next();
        if (t.kind != TokKind::Punct || t.text != p)
            throw ParseError("expected '" + p + "', found '" + t.text + "'", t.line, t.col);
    }

    bool at_punct(const std::string& p) {
        return lex_.peek().kind == TokKind::Punct && lex_.peek().text == p;
    }

    void skip_to_semicolon(const Token& start) {
        while (true) {
            Token t = lex_.next();
            if (t.kind == TokKind::End)
                throw ParseError("unterminated statement", start.line, start.col);
            if (t.kind == TokKind::Punct && t.text == ";") return;
        }
    }

    int var_index(const Token& name_tok) const {
        auto it = var_index_.find(name_tok.text);
        if (it == var_index_.end())
            throw SemanticError("line " + std::to_string(name_tok.line) +
                                ": reference to undeclared variable '" + name_tok.text + "'");
        return it->second;
    }

    void parse_variable() {
        Token name = expect(TokKind::Word);
        if (var_index_.count(name.text))
            throw SemanticError("line " + std::to_string(name.line) +
                                ": variable '" + name.text + "' declared twice");
        expect_punct("{");
        Variable var;
        var.name = name.text;
        bool typed = false;
        while (!at_punct("}")) {
            Token t = lex_.next();
            if (t.kind == TokKind::Word && t.text == "property") {
                skip_to_semicolon(t);
                continue;
            }
            if (t.kind != TokKind::Word || t.text != "type")
                throw ParseError("unsupported construct '" + t.text + "' in variable block",
                                 t.line, t.col);
            Token kind = lex_.next();
            if (kind.kind != TokKind::Word || kind.text != "discrete")
                throw ParseError("unsupported variable type '" + kind.text + "'", kind.line,
                                 kind.col);
            expect_punct("[");
            Token count = expect(TokKind::Number);
            expect_punct("]");
            expect_punct("{");
            while (!at_punct("}")) {
                Token s = lex_.next();
                if (s.kind == TokKind::Punct && s.text == ",") continue;
                if (s.kind != TokKind::Word && s.kind != TokKind::Number)
                    throw ParseError("bad state label '" + s.text + "'", s.line, s.col);
                var.states.push_back(s.text);
            }
            expect_punct("}");
            expect_punct(";");
            if (static_cast<int>(var.states.size()) != static_cast<int>(count.value))
                throw SemanticError("line " + std::to_string(count.line) + ": variable '" +
                                    var.name + "' declares " + count.text + " states but lists " +
                                    std::to_string(var.states.size()));
            typed = true;
        }
        expect_punct("}");
        if (!typed)
            throw ParseError("variable '" + var.name + "' has no type declaration", name.line,
                             name.col);
        if (var.cardinality() < 2)
            throw SemanticError("variable '" + var.name + "' has fewer than 2 states");
        for (std::size_t i = 0; i < var.states.size(); ++i)
            for (std::size_t j = i + 1; j < var.states.size(); ++j)
                if (var.states[i] == var.states[j])
                    throw SemanticError("variable '" + var.name + "' repeats state '" +
                                        var.states[i] + "'");
        var_index_[var.name] = static_cast<int>(variables_.size());
        variables_.push_back(std::move(var));
    }

    struct RawCpt {
        int child = -1;
        std::vector<int> parents;
        std::vector<double> table;        // filled rows, config-major
        std::vector<bool> covered;        // per config
        int line = 0;
    };

    void parse_probability() {
        Token open = lex_.next();
        if (open.kind != TokKind::Punct || open.text != "(")
            throw ParseError("expected '(' after 'probability'", open.line, open.col);
        Token child_tok = expect(TokKind::Word);
        RawCpt raw;
        raw.line = child_tok.line;
        raw.child = var_index(child_tok);
        if (at_punct("|")) {
            lex_.next();
            while (true) {
                Token p = expect(TokKind::Word);
                raw.parents.push_back(var_index(p));
                if (at_punct(",")) {
                    lex_.next();
                    continue;
                }
                break;
            }
        }
        expect_punct(")");
        for (std::size_t i = 0; i < raw.parents.size(); ++i) {
            if (raw.parents[i] == raw.child)
                throw SemanticError("line " + std::to_string(child_tok.line) + ": variable '" +
                                    child_tok.text + "' conditions on itself");
            for (std::size_t j = i + 1; j < raw.parents.size(); ++j)
                if (raw.parents[i] == raw.parents[j])
                    throw SemanticError("line " + std::to_string(child_tok.line) +
                                        ": duplicate parent in probability block for '" +
                                        child_tok.text + "'");
        }

        const int r = variables_[raw.child].cardinality();
        std::uint64_t q = 1;
        for (int p : raw.parents) q *= static_cast<std::uint64_t>(variables_[p].cardinality());
        raw.table.assign(q * static_cast<std::uint64_t>(r), 0.0);
        raw.covered.assign(q, false);

        expect_punct("{");
        while (!at_punct("}")) {
            Token t = lex_.next();
            if (t.kind == TokKind::Word && t.text == "property") {
                skip_to_semicolon(t);
            } else if (t.kind == TokKind::Word && t.text == "table") {
                auto values = read_numbers(t);
                if (values.size() != raw.table.size())
                    throw SemanticError("line " + std::to_string(t.line) +
                                        ": table for '" + child_tok.text + "' lists " +
                                        std::to_string(values.size()) + " values, expected " +
                                        std::to_string(raw.table.size()));
                // Child state varies slowest, parent configurations fastest.
                for (std::uint64_t cfg = 0; cfg < q; ++cfg) {
                    for (int k = 0; k < r; ++k)
                        raw.table[cfg * r + k] = values[static_cast<std::uint64_t>(k) * q + cfg];
                    mark_covered(raw, cfg, child_tok.text, t.line);
                }
            } else if (t.kind == TokKind::Punct && t.text == "(") {
                std::uint64_t cfg = 0;
                for (std::size_t i = 0; i < raw.parents.size(); ++i) {
                    Token s = lex_.next();
                    if (s.kind == TokKind::Punct && s.text == ",") s = lex_.next();
                    if (s.kind != TokKind::Word && s.kind != TokKind::Number)
                        throw ParseError("bad state '" + s.text + "' in configuration", s.line,
                                         s.col);
                    const Variable& pv = variables_[raw.parents[i]];
                    int code = -1;
                    for (std::size_t k = 0; k < pv.states.size(); ++k)
                        if (pv.states[k] == s.text) code = static_cast<int>(k);
                    if (code < 0)
                        throw SemanticError("line " + std::to_string(s.line) + ": '" + s.text +
                                            "' is not a state of '" + pv.name + "'");
                    cfg = cfg * static_cast<std::uint64_t>(pv.cardinality()) +
                          static_cast<std::uint64_t>(code);
                }
                expect_punct(")");
                auto values = read_numbers(t);
                if (values.size() != static_cast<std::size_t>(r))
                    throw SemanticError("line " + std::to_string(t.line) + ": row for '" +
                                        child_tok.text + "' lists " +
                                        std::to_string(values.size()) + " values, expected " +
                                        std::to_string(r));
                for (int k = 0; k < r; ++k) raw.table[cfg * r + k] = values[k];
                mark_covered(raw, cfg, child_tok.text, t.line);
            } else {
                throw ParseError("unsupported construct '" + t.text + "' in probability block",
                                 t.line, t.col);
            }
        }
        expect_punct("}");

        if (raw.parents.empty() && !raw.covered[0])
            throw SemanticError("probability block for '" + child_tok.text + "' has no rows");
        for (std::uint64_t cfg = 0; cfg < q; ++cfg)
            if (!raw.covered[cfg])
                throw SemanticError("probability block for '" + child_tok.text + "' misses " +
                                    std::to_string(q - covered_count(raw)) +
                                    " parent configuration(s)");

        normalize_rows(raw, child_tok.text, r);
        if (cpts_.count(raw.child))
            throw SemanticError("duplicate probability block for '" + child_tok.text + "'");
        cpts_.emplace(raw.child, std::move(raw));
    }

    static std::uint64_t covered_count(const RawCpt& raw) {
        std::uint64_t c = 0;
        for (bool b : raw.covered) c += b;
        return c;
    }

    void mark_covered(RawCpt& raw, std::uint64_t cfg, const std::string& child_name, int line) {
        if (raw.covered[cfg])
            throw SemanticError("line " + std::to_string(line) +
                                ": duplicate configuration in probability block for '" +
                                child_name + "'");
        raw.covered[cfg] = true;
    }

    std::vector<double> read_numbers(const Token& context) {
        std::vector<double> values;
        while (true) {
            Token t = lex_.next();
            if (t.kind == TokKind::Punct && t.text == ";") break;
            if (t.kind == TokKind::Punct && t.text == ",") continue;
            if (t.kind != TokKind::Number)
                throw ParseError("expected a probability, found '" + t.text + "'", t.line,
                                 t.col);
            if (t.value < 0)
                throw SemanticError("line " + std::to_string(t.line) +
                                    ": negative probability " + t.text);
            values.push_back(t.value);
        }
        if (values.empty())
            throw ParseError("empty probability row", context.line, context.col);
        return values;
    }

    void normalize_rows(RawCpt& raw, const std::string& child_name, int r) {
        const std::uint64_t q = raw.covered.size();
        for (std::uint64_t cfg = 0; cfg < q; ++cfg) {
            double sum = 0;
            for (int k = 0; k < r; ++k) sum += raw.table[cfg * r + k];
            if (std::abs(sum - 1.0) > 1e-4)
                throw SemanticError("probability row " + std::to_string(cfg) + " for '" +
                                    child_name + "' sums to " + std::to_string(sum));
            for (int k = 0; k < r; ++k) raw.table[cfg * r + k] /= sum;
        }
    }

    BayesianNetwork build() {
        const int n = static_cast<int>(variables_.size());
        Dag dag(n);
        std::vector<Cpt> cpts(n);
        for (int v = 0; v < n; ++v) {
            auto it = cpts_.find(v);
            if (it == cpts_.end())
                throw SemanticError("no probability block for variable '" + variables_[v].name +
                                    "'");
            Cpt c;
            c.child = v;
            c.parents = it->second.parents;
            c.table = std::move(it->second.table);
            cpts[v] = std::move(c);
            for (int p : it->second.parents) dag.add_arc(p, v);
        }
        return BayesianNetwork(net_name_, std::move(variables_), std::move(dag),
                               std::move(cpts));
    }

    Lexer lex_;
    std::string net_name_;
    std::vector<Variable> variables_;
    std::unordered_map<std::string, int> var_index_;
    std::unordered_map<int, RawCpt> cpts_;
};

std::string format_prob(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

BayesianNetwork parse_bif(const std::string& text) { return BifParser(text).parse(); }

std::string write_bif(const BayesianNetwork& bn) {
    std::ostringstream out;
    out << "network " << (bn.name().empty() ? "unknown" : bn.name()) << " {\n}\n";
    for (int v = 0; v < bn.num_variables(); ++v) {
        const Variable& var = bn.variable(v);
        out << "variable " << var.name << " {\n";
        out << "  type discrete [ " << var.cardinality() << " ] { ";
        for (int k = 0; k < var.cardinality(); ++k) {
            if (k) out << ", ";
            out << var.states[k];
        }
        out << " };\n}\n";
    }
    for (int v = 0; v < bn.num_variables(); ++v) {
        const Cpt& cpt = bn.cpt(v);
        const Variable& var = bn.variable(v);
        const int r = var.cardinality();
        out << "probability ( " << var.name;
        if (!cpt.parents.empty()) {
            out << " | ";
            for (std::size_t i = 0; i < cpt.parents.size(); ++i) {
                if (i) out << ", ";
                out << bn.variable(cpt.parents[i]).name;
            }
        }
        out << " ) {\n";
        if (cpt.parents.empty()) {
            out << "  table ";
            for (int k = 0; k < r; ++k) {
                if (k) out << ", ";
                out << format_prob(cpt.table[k]);
            }
            out << ";\n";
        } else {
            const std::uint64_t q = cpt.num_configs(bn.variables());
            std::vector<int> digits(cpt.parents.size(), 0);
            for (std::uint64_t cfg = 0; cfg < q; ++cfg) {
                out << "  (";
                for (std::size_t i = 0; i < cpt.parents.size(); ++i) {
                    if (i) out << ", ";
                    out << bn.variable(cpt.parents[i]).states[digits[i]];
                }
                out << ") ";
                for (int k = 0; k < r; ++k) {
                    if (k) out << ", ";
                    out << format_prob(cpt.table[cfg * r + k]);
                }
                out << ";\n";
                for (std::size_t i = cpt.parents.size(); i-- > 0;) {
                    if (++digits[i] < bn.variable(cpt.parents[i]).cardinality()) break;
                    digits[i] = 0;
                }
            }
        }
        out << "}\n";
    }
    return out.str();
}

}  // namespace mctsbn
