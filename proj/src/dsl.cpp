#include "jetforge/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace jetforge {

ParseError::ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& message)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + kind_name(kind) + ": " +
            message),
      kind_(kind), line_(line), column_(column)
{
}

const char* ParseError::kind_name(Kind kind)
{
    switch (kind) {
    case Kind::lexical: return "LexicalError";
    case Kind::syntax: return "SyntaxError";
    case Kind::undeclared_variable: return "UndeclaredVariable";
    case Kind::inhomogeneous_relation: return "InhomogeneousRelation";
    case Kind::duplicate_declaration: return "DuplicateDeclaration";
    case Kind::missing_declaration: return "MissingDeclaration";
    case Kind::invalid_field: return "InvalidField";
    }
    return "ParseError";
}

namespace {

using Kind = ParseError::Kind;

struct Token {
    enum class Type { ident, number, symbol, end } type;
    std::string text;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view line, std::size_t line_no)
{
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#')
            break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (i < line.size() && std::isalnum(static_cast<unsigned char>(line[i])))
                ++i;
            if (i < line.size() && line[i] == '_')
                throw ParseError(Kind::lexical, line_no, i + 1, "'_' is not allowed in identifiers");
            tokens.push_back({Token::Type::ident, std::string(line.substr(start, i - start)), start + 1});
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i])))
                ++i;
            if (i < line.size() && std::isalpha(static_cast<unsigned char>(line[i])))
                throw ParseError(Kind::lexical, line_no, i + 1, "identifier must not follow a number directly");
            tokens.push_back({Token::Type::number, std::string(line.substr(start, i - start)), start + 1});
        } else if (std::string_view("[],=+-*/^()").find(c) != std::string_view::npos) {
            tokens.push_back({Token::Type::symbol, std::string(1, c), start + 1});
            ++i;
        } else {
            throw ParseError(Kind::lexical, line_no, start + 1, std::string("unexpected character '") + c + "'");
        }
    }
    tokens.push_back({Token::Type::end, "", line.size() + 1});
    return tokens;
}

// Recursive-descent reader over the tokens of one line.
class LineParser {
public:
    LineParser(std::vector<Token> tokens, std::size_t line_no) : tokens_(std::move(tokens)), line_(line_no) {}

    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
    bool at_end() const { return peek().type == Token::Type::end; }
    std::size_t line() const { return line_; }

    bool accept(const std::string& symbol)
    {
        if (peek().type == Token::Type::symbol && peek().text == symbol) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(const std::string& symbol)
    {
        if (!accept(symbol))
            fail(Kind::syntax, "expected '" + symbol + "'" + found());
    }

    const Token& expect_ident()
    {
        if (peek().type != Token::Type::ident)
            fail(Kind::syntax, "expected an identifier" + found());
        return next();
    }

    bool accept_keyword(const std::string& word)
    {
        if (peek().type == Token::Type::ident && peek().text == word) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::uint32_t expect_nat()
    {
        if (peek().type != Token::Type::number)
            fail(Kind::syntax, "expected a natural number" + found());
        const auto& t = next();
        if (t.text.size() > 9)
            throw ParseError(Kind::syntax, line_, t.column, "number too large");
        return static_cast<std::uint32_t>(std::stoul(t.text));
    }

    void expect_end()
    {
        if (!at_end())
            fail(Kind::syntax, "unexpected trailing input" + found());
    }

    [[noreturn]] void fail(Kind kind, const std::string& message) const
    {
        throw ParseError(kind, line_, peek().column, message);
    }

    std::string found() const
    {
        return at_end() ? " at end of line" : ", found '" + peek().text + "'";
    }

    Field field(Field default_field)
    {
        const auto& t = expect_ident();
        if (t.text == "k")
            return default_field;
        try {
            return Field::parse(t.text);
        } catch (const Error& e) {
            throw ParseError(Kind::invalid_field, line_, t.column, e.what());
        }
    }

    std::vector<std::pair<std::string, std::size_t>> ident_list()
    {
        std::vector<std::pair<std::string, std::size_t>> out;
        expect("[");
        if (accept("]"))
            return out;
        do {
            const auto& t = expect_ident();
            out.emplace_back(t.text, t.column);
        } while (accept(","));
        expect("]");
        return out;
    }

    // poly := [sign] term {sign term}
    Poly poly(Field field, const std::vector<std::string>& vars)
    {
        Poly result(field);
        bool negative = accept("-");
        if (!negative)
            accept("+");
        for (;;) {
            auto t = term(field, vars);
            result += negative ? -t : t;
            if (accept("+"))
                negative = false;
            else if (accept("-"))
                negative = true;
            else
                break;
        }
        return result;
    }

private:
    // term := factor {("*" | "/") factor}; divisors must be nonzero constants
    Poly term(Field field, const std::vector<std::string>& vars)
    {
        auto value = factor(field, vars);
        for (;;) {
            if (accept("*"))
                value *= factor(field, vars);
            else if (peek().type == Token::Type::symbol && peek().text == "/") {
                auto column = next().column;
                auto d = factor(field, vars);
                if (!d.is_constant() || d.is_zero())
                    throw ParseError(Kind::syntax, line_, column, "division only by nonzero constants");
                value = d.constant_term().inverse() * value;
            } else
                return value;
        }
    }

    // factor := atom ["^" nat]
    Poly factor(Field field, const std::vector<std::string>& vars)
    {
        auto base = atom(field, vars);
        if (accept("^"))
            return base.pow(expect_nat());
        return base;
    }

    Poly atom(Field field, const std::vector<std::string>& vars)
    {
        const auto& t = peek();
        if (t.type == Token::Type::number) {
            next();
            try {
                return Poly::constant(Scalar(field, mpz_class(t.text), mpz_class(1)));
            } catch (const Error& e) {
                throw ParseError(Kind::syntax, line_, t.column, e.what());
            }
        }
        if (t.type == Token::Type::ident) {
            next();
            auto it = std::find(vars.begin(), vars.end(), t.text);
            if (it == vars.end())
                throw ParseError(Kind::undeclared_variable, line_, t.column, "'" + t.text + "' is not declared");
            return Poly::variable(field, JetVar(static_cast<std::uint32_t>(it - vars.begin())));
        }
        if (accept("(")) {
            auto p = poly(field, vars);
            expect(")");
            return p;
        }
        fail(Kind::syntax, "expected a number, variable or '('" + found());
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::size_t line_;
};

void check_unique_name(const InputDocument& doc, const std::string& name, std::size_t line, std::size_t column)
{
    auto taken = [&](const std::vector<NamedPoly>& list) {
        return std::any_of(list.begin(), list.end(), [&](const NamedPoly& p) { return p.name == name; });
    };
    if (taken(doc.relations) || taken(doc.elements) || (doc.morphism && taken(doc.morphism->target_relations)))
        throw ParseError(Kind::duplicate_declaration, line, column, "'" + name + "' is already defined");
}

} // namespace

InputDocument parse_input(std::string_view text, Field default_field)
{
    InputDocument doc;
    bool have_ring = false;
    std::vector<std::optional<std::uint32_t>> grades;
    std::size_t first_grade_line = 0;
    std::vector<std::optional<Poly>> images;
    std::size_t target_line = 0;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        start = end + 1;
        ++line_no;

        LineParser p(tokenize(line, line_no), line_no);
        if (p.at_end())
            continue;

        auto require_ring = [&] {
            if (!have_ring)
                p.fail(Kind::missing_declaration, "a 'ring' declaration must come first");
        };

        if (p.accept_keyword("ring")) {
            if (have_ring)
                throw ParseError(Kind::duplicate_declaration, line_no, 1, "ring already declared");
            doc.field = p.field(default_field);
            for (const auto& [name, column] : p.ident_list()) {
                if (std::find(doc.vars.begin(), doc.vars.end(), name) != doc.vars.end())
                    throw ParseError(Kind::duplicate_declaration, line_no, column, "variable '" + name + "' repeated");
                doc.vars.push_back(name);
            }
            p.expect_end();
            have_ring = true;
            grades.assign(doc.vars.size(), std::nullopt);
            images.assign(doc.vars.size(), std::nullopt);
        } else if (p.accept_keyword("grade")) {
            require_ring();
            const auto& v = p.expect_ident();
            auto it = std::find(doc.vars.begin(), doc.vars.end(), v.text);
            if (it == doc.vars.end())
                throw ParseError(Kind::undeclared_variable, line_no, v.column, "'" + v.text + "' is not declared");
            auto& slot = grades[static_cast<std::size_t>(it - doc.vars.begin())];
            if (slot)
                throw ParseError(Kind::duplicate_declaration, line_no, v.column, "grade of '" + v.text + "' repeated");
            p.expect("=");
            slot = p.expect_nat();
            p.expect_end();
            if (!first_grade_line)
                first_grade_line = line_no;
        } else if (p.peek().text == "ideal" || p.peek().text == "element") {
            bool is_relation = p.next().text == "ideal";
            require_ring();
            const auto& name = p.expect_ident();
            check_unique_name(doc, name.text, line_no, name.column);
            p.expect("=");
            auto column = p.peek().column;
            NamedPoly np{name.text, p.poly(doc.field, doc.vars), line_no, column};
            p.expect_end();
            (is_relation ? doc.relations : doc.elements).push_back(std::move(np));
        } else if (p.accept_keyword("module")) {
            require_ring();
            if (doc.module)
                throw ParseError(Kind::duplicate_declaration, line_no, 1, "module already declared");
            if (!p.accept_keyword("rank"))
                p.fail(Kind::syntax, "expected 'rank'" + p.found());
            doc.module = ModuleDecl{p.expect_nat(), {}};
            p.expect_end();
        } else if (p.accept_keyword("relation")) {
            if (!doc.module)
                p.fail(Kind::missing_declaration, "'relation' needs a preceding 'module rank r'");
            std::vector<Poly> row;
            if (!p.at_end()) {
                row.push_back(p.poly(doc.field, doc.vars));
                while (p.accept(","))
                    row.push_back(p.poly(doc.field, doc.vars));
            }
            if (row.size() != doc.module->rank)
                throw ParseError(Kind::syntax, line_no, 1,
                                 "relation has " + std::to_string(row.size()) + " entries, module rank is " +
                                     std::to_string(doc.module->rank));
            p.expect_end();
            doc.module->rows.push_back(std::move(row));
        } else if (p.accept_keyword("target")) {
            require_ring();
            if (p.accept_keyword("ideal")) {
                if (!doc.morphism)
                    p.fail(Kind::missing_declaration, "'target ideal' needs a preceding 'target' ring");
                const auto& name = p.expect_ident();
                check_unique_name(doc, name.text, line_no, name.column);
                p.expect("=");
                auto column = p.peek().column;
                NamedPoly np{name.text, p.poly(doc.morphism->field, doc.morphism->target_vars), line_no, column};
                p.expect_end();
                doc.morphism->target_relations.push_back(std::move(np));
            } else {
                if (doc.morphism)
                    throw ParseError(Kind::duplicate_declaration, line_no, 1, "target ring already declared");
                MorphismDecl m;
                auto field_column = p.peek().column;
                m.field = p.field(default_field);
                if (m.field != doc.field)
                    throw ParseError(Kind::invalid_field, line_no, field_column,
                                     "target field must match the source field");
                for (const auto& [name, column] : p.ident_list()) {
                    if (std::find(m.target_vars.begin(), m.target_vars.end(), name) != m.target_vars.end())
                        throw ParseError(Kind::duplicate_declaration, line_no, column,
                                         "variable '" + name + "' repeated");
                    m.target_vars.push_back(name);
                }
                p.expect_end();
                doc.morphism = std::move(m);
                target_line = line_no;
            }
        } else if (p.accept_keyword("map")) {
            if (!doc.morphism)
                p.fail(Kind::missing_declaration, "'map' needs a preceding 'target' ring");
            const auto& v = p.expect_ident();
            auto it = std::find(doc.vars.begin(), doc.vars.end(), v.text);
            if (it == doc.vars.end())
                throw ParseError(Kind::undeclared_variable, line_no, v.column, "'" + v.text + "' is not declared");
            auto& slot = images[static_cast<std::size_t>(it - doc.vars.begin())];
            if (slot)
                throw ParseError(Kind::duplicate_declaration, line_no, v.column, "image of '" + v.text + "' repeated");
            p.expect("=");
            slot = p.poly(doc.morphism->field, doc.morphism->target_vars);
            p.expect_end();
        } else {
            p.fail(Kind::syntax, "unknown statement" + p.found());
        }
    }

    if (!have_ring)
        throw ParseError(Kind::missing_declaration, line_no ? line_no : 1, 1, "no 'ring' declaration");

    if (first_grade_line) {
        std::vector<std::uint32_t> grading;
        for (std::size_t x = 0; x < grades.size(); ++x) {
            if (!grades[x])
                throw ParseError(Kind::missing_declaration, first_grade_line, 1,
                                 "graded ring but no grade for '" + doc.vars[x] + "'");
            grading.push_back(*grades[x]);
        }
        doc.grading = std::move(grading);
        for (const auto& r : doc.relations)
            if (!r.poly.is_zero() && !homogeneous_degree(r.poly, GradingMode::induced, doc.grading))
                throw ParseError(Kind::inhomogeneous_relation, r.line, r.column,
                                 "relation '" + r.name + "' is not homogeneous for the declared grading");
    }

    if (doc.morphism) {
        for (std::size_t x = 0; x < images.size(); ++x) {
            if (!images[x])
                throw ParseError(Kind::missing_declaration, target_line, 1, "no 'map' for '" + doc.vars[x] + "'");
            doc.morphism->images.push_back(std::move(*images[x]));
        }
    }
    return doc;
}

std::string print_document(const InputDocument& doc)
{
    std::ostringstream out;
    auto names = doc.base_names();
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + v[i];
        return s;
    };
    out << "ring " << doc.field.name() << "[" << join(doc.vars) << "]\n";
    if (doc.grading)
        for (std::size_t x = 0; x < doc.vars.size(); ++x)
            out << "grade " << doc.vars[x] << " = " << (*doc.grading)[x] << "\n";
    for (const auto& r : doc.relations)
        out << "ideal " << r.name << " = " << to_string(r.poly, names) << "\n";
    for (const auto& e : doc.elements)
        out << "element " << e.name << " = " << to_string(e.poly, names) << "\n";
    if (doc.module) {
        out << "module rank " << doc.module->rank << "\n";
        for (const auto& row : doc.module->rows) {
            out << "relation";
            for (std::size_t l = 0; l < row.size(); ++l)
                out << (l ? ", " : " ") << to_string(row[l], names);
            out << "\n";
        }
    }
    if (doc.morphism) {
        const auto& m = *doc.morphism;
        VarNames target{m.target_vars, false};
        out << "target " << m.field.name() << "[" << join(m.target_vars) << "]\n";
        for (const auto& r : m.target_relations)
            out << "target ideal " << r.name << " = " << to_string(r.poly, target) << "\n";
        for (std::size_t x = 0; x < m.images.size(); ++x)
            out << "map " << doc.vars[x] << " = " << to_string(m.images[x], target) << "\n";
    }
    return out.str();
}

AlgebraPresentation InputDocument::algebra() const
{
    std::vector<Poly> rels;
    for (const auto& r : relations)
        rels.push_back(r.poly);
    return AlgebraPresentation(field, vars, std::move(rels), grading);
}

ModulePresentation InputDocument::module_presentation() const
{
    if (!module)
        throw Error("the input declares no module (expected 'module rank r')");
    return ModulePresentation(algebra(), module->rank, module->rows);
}

AlgebraPresentation InputDocument::target_algebra() const
{
    if (!morphism)
        throw Error("the input declares no morphism (expected 'target' and 'map' lines)");
    std::vector<Poly> rels;
    for (const auto& r : morphism->target_relations)
        rels.push_back(r.poly);
    return AlgebraPresentation(morphism->field, morphism->target_vars, std::move(rels));
}

AlgebraMorphism InputDocument::morphism_map() const
{
    return AlgebraMorphism(algebra(), target_algebra(), morphism.value().images);
}

Field default_field_from_env()
{
    const char* env = std::getenv("JETFORGE_FIELD");
    if (!env || !*env)
        return Field::rationals();
    return Field::parse(env);
}

} // namespace jetforge
