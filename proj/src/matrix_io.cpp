#include "qma/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include "qma/coeff_parser.hpp"

namespace qma {

SparseOp<QRat> read_matrix(std::istream& in, const std::string& name) {
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw InputError(name + ":" + std::to_string(lineno) + ": " + msg);
    };

    int dim = 0, arity = 0;
    // Header
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw1, kw2;
        if (!(ls >> kw1)) continue;  // blank
        if (kw1 != "dim") fail("expected header 'dim N arity 2'");
        if (!(ls >> dim >> kw2 >> arity) || kw2 != "arity") fail("expected header 'dim N arity 2'");
        if (dim < 2) fail("dim must be >= 2");
        if (arity != 2) fail("only arity 2 operators are supported");
        break;
    }
    if (dim == 0) fail("missing header");

    SparseOp<QRat> op(dim, 2);
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int a, b, c, d;
        if (!(ls >> a)) continue;  // blank
        if (!(ls >> b >> c >> d)) fail("expected 'a b c d <coeff-expr>'");
        for (int idx : {a, b, c, d})
            if (idx < 0 || idx >= dim) fail("index " + std::to_string(idx) + " out of range");
        std::string expr;
        std::getline(ls, expr);
        QRat v;
        try {
            v = parse_coeff(expr);
        } catch (const ParseError& e) {
            fail(e.what());
        }
        const int rw[2] = {a, b}, cw[2] = {c, d};
        const FlatIndex r = encode_word(rw, dim, 2), cc = encode_word(cw, dim, 2);
        if (!op.entry(r, cc).is_zero()) fail("duplicate entry");
        op.set(r, cc, v);
    }
    return op;
}

SparseOp<QRat> read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open matrix file '" + path + "'");
    return read_matrix(in, path);
}

void write_matrix(std::ostream& out, const SparseOp<QRat>& op) {
    out << "dim " << op.dim() << " arity " << op.arity() << "\n";
    std::vector<int> rw(op.arity()), cw(op.arity());
    for (const auto& [r, row] : op.rows()) {
        for (const auto& [c, v] : row) {
            decode_word(r, op.dim(), op.arity(), rw.data());
            decode_word(c, op.dim(), op.arity(), cw.data());
            for (int x : rw) out << x << " ";
            for (int x : cw) out << x << " ";
            out << v.str() << "\n";
        }
    }
}

} // namespace qma
