#include "eoq/document.hpp"

#include "eoq/errors.hpp"
#include "json.hpp"

namespace eoq {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        bad(std::string("missing field \"") + key + "\"");
    return *it;
}

std::string str_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_string())
        bad(std::string("field \"") + key + "\" must be a string");
    return v.get<std::string>();
}

Polynomial parse_poly(const json& j, const RingPtr& ring, const char* what) {
    if (!j.is_string())
        bad(std::string(what) + " must be a polynomial string");
    try {
        return Polynomial::parse(j.get<std::string>(), ring->variables);
    } catch (const std::exception& e) {
        bad(std::string("cannot read ") + what + ": " + e.what());
    }
}

// --- rings --------------------------------------------------------------

json ring_json(const RingPtr& r) {
    json j;
    j["variables"] = r->variables;
    json gens = json::array();
    for (const auto& g : r->inverted)
        gens.push_back(g.str(r->variables));
    j["inverted"] = std::move(gens);
    return j;
}

RingPtr parse_ring(const json& j) {
    if (!j.is_object())
        bad("ring must be an object");
    const json& jv = field(j, "variables");
    if (!jv.is_array())
        bad("ring variables must be an array");
    std::vector<std::string> vars;
    for (const auto& v : jv) {
        if (!v.is_string())
            bad("ring variable names must be strings");
        vars.push_back(v.get<std::string>());
    }
    const json& jg = field(j, "inverted");
    if (!jg.is_array())
        bad("ring inverted list must be an array");
    std::vector<Polynomial> gens;
    for (const auto& g : jg) {
        if (!g.is_string())
            bad("inverted generators must be polynomial strings");
        try {
            gens.push_back(Polynomial::parse(g.get<std::string>(), vars));
        } catch (const std::exception& e) {
            bad(std::string("cannot read an inverted generator: ") + e.what());
        }
    }
    try {
        return make_ring(vars, gens);
    } catch (const std::exception& e) {
        bad(std::string("invalid ring descriptor: ") + e.what());
    }
}

// --- elements -----------------------------------------------------------

json elem_json(const RingElement& e) {
    bool plain = true;
    for (int k : e.denominator_exponents())
        plain = plain && k == 0;
    std::string num = e.numerator().str(e.ring()->variables);
    if (plain)
        return json(num);
    json j;
    j["num"] = std::move(num);
    j["den"] = e.denominator_exponents();
    return j;
}

RingElement parse_elem(const json& j, const RingPtr& ring) {
    if (j.is_string()) {
        return RingElement::from_polynomial(
            ring, parse_poly(j, ring, "a ring element"));
    }
    if (!j.is_object())
        bad("ring elements are strings or {num, den} objects");
    Polynomial num = parse_poly(field(j, "num"), ring, "a ring element numerator");
    std::vector<int> den(ring->inverted.size(), 0);
    if (auto it = j.find("den"); it != j.end()) {
        if (!it->is_array() || it->size() != den.size())
            bad("denominator exponent list does not match the ring");
        for (std::size_t k = 0; k < den.size(); ++k) {
            if (!(*it)[k].is_number_integer())
                bad("denominator exponents must be integers");
            den[k] = (*it)[k].get<int>();
        }
    }
    try {
        return RingElement::from(ring, std::move(num), std::move(den));
    } catch (const std::exception& e) {
        bad(std::string("invalid ring element: ") + e.what());
    }
}

json vec_json(const Vec& v) {
    json j = json::array();
    for (const auto& e : v)
        j.push_back(elem_json(e));
    return j;
}

Vec parse_vec(const json& j, const RingPtr& ring, const char* what) {
    if (!j.is_array())
        bad(std::string(what) + " must be an array");
    Vec v;
    for (const auto& e : j)
        v.push_back(parse_elem(e, ring));
    return v;
}

// --- matrices -----------------------------------------------------------

json mat_json(const Mat& m) {
    json j;
    j["ring"] = ring_json(m.ring());
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k)
            row.push_back(elem_json(m.at(i, k)));
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

Mat parse_mat(const json& j) {
    if (!j.is_object())
        bad("matrix must be an object");
    RingPtr ring = parse_ring(field(j, "ring"));
    const json& jr = field(j, "rows");
    if (!jr.is_array() || jr.empty())
        bad("matrix rows must be a nonempty array");
    std::size_t cols = 0;
    for (const auto& row : jr) {
        if (!row.is_array() || row.empty())
            bad("matrix rows must be nonempty arrays");
        if (cols == 0)
            cols = row.size();
        else if (row.size() != cols)
            bad("matrix rows have unequal lengths");
    }
    Mat m(ring, jr.size(), cols);
    for (std::size_t i = 0; i < jr.size(); ++i)
        for (std::size_t k = 0; k < cols; ++k)
            m.at(i, k) = parse_elem(jr[i][k], ring);
    return m;
}

// --- words --------------------------------------------------------------

const char* kind_name(GenKind k) {
    switch (k) {
    case GenKind::T1: return "T1";
    case GenKind::T2: return "T2";
    case GenKind::T3: return "T3";
    case GenKind::T4: return "T4";
    case GenKind::T5: return "T5";
    case GenKind::EA: return "EA";
    case GenKind::EB: return "EB";
    case GenKind::CAB: return "CAB";
    case GenKind::CAA: return "CAA";
    case GenKind::CBB: return "CBB";
    }
    return "?";
}

json letter_json(const Letter& l) {
    json j;
    j["kind"] = kind_name(l.gen.kind);
    switch (l.gen.kind) {
    case GenKind::T1:
    case GenKind::T2:
        j["i"] = l.gen.i;
        j["param"] = elem_json(l.gen.param);
        break;
    case GenKind::T3:
    case GenKind::T4:
    case GenKind::T5:
        j["i"] = l.gen.i;
        j["j"] = l.gen.j;
        j["param"] = elem_json(l.gen.param);
        break;
    case GenKind::EA:
    case GenKind::EB:
        j["u"] = vec_json(l.gen.u);
        break;
    case GenKind::CAB:
    case GenKind::CAA:
    case GenKind::CBB:
        j["u"] = vec_json(l.gen.u);
        j["v"] = vec_json(l.gen.v);
        break;
    }
    if (l.exp != 1)
        j["exp"] = l.exp;
    return j;
}

std::size_t index_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_unsigned())
        bad(std::string("field \"") + key + "\" must be a nonnegative integer");
    return v.get<std::size_t>();
}

Letter parse_letter(const json& j, const RingPtr& ring) {
    if (!j.is_object())
        bad("letters must be objects");
    std::string kind = str_field(j, "kind");
    Generator g;
    try {
        if (kind == "T1")
            g = Generator::t1(index_field(j, "i"), parse_elem(field(j, "param"), ring));
        else if (kind == "T2")
            g = Generator::t2(index_field(j, "i"), parse_elem(field(j, "param"), ring));
        else if (kind == "T3")
            g = Generator::t3(index_field(j, "i"), index_field(j, "j"),
                              parse_elem(field(j, "param"), ring));
        else if (kind == "T4")
            g = Generator::t4(index_field(j, "i"), index_field(j, "j"),
                              parse_elem(field(j, "param"), ring));
        else if (kind == "T5")
            g = Generator::t5(index_field(j, "i"), index_field(j, "j"),
                              parse_elem(field(j, "param"), ring));
        else if (kind == "EA")
            g = Generator::ea(parse_vec(field(j, "u"), ring, "letter vector u"));
        else if (kind == "EB")
            g = Generator::eb(parse_vec(field(j, "u"), ring, "letter vector u"));
        else if (kind == "CAB")
            g = Generator::cab(parse_vec(field(j, "u"), ring, "letter vector u"),
                               parse_vec(field(j, "v"), ring, "letter vector v"));
        else if (kind == "CAA")
            g = Generator::caa(parse_vec(field(j, "u"), ring, "letter vector u"),
                               parse_vec(field(j, "v"), ring, "letter vector v"));
        else if (kind == "CBB")
            g = Generator::cbb(parse_vec(field(j, "u"), ring, "letter vector u"),
                               parse_vec(field(j, "v"), ring, "letter vector v"));
        else
            bad("unknown letter kind \"" + kind + "\"");
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        bad("invalid letter: " + std::string(e.what()));
    }
    int exp = 1;
    if (auto it = j.find("exp"); it != j.end()) {
        if (!it->is_number_integer())
            bad("letter exponent must be an integer");
        exp = it->get<int>();
        if (exp != 1 && exp != -1)
            bad("letter exponents are 1 or -1");
    }
    return Letter{std::move(g), exp};
}

json word_json(const GeneratorWord& w, const RingPtr& fallback) {
    json j;
    const RingPtr& r = w.empty() ? fallback : w.front().gen.ring();
    if (r)
        j["ring"] = ring_json(r);
    else
        j["ring"] = nullptr;
    json letters = json::array();
    for (const auto& l : w)
        letters.push_back(letter_json(l));
    j["letters"] = std::move(letters);
    return j;
}

GeneratorWord parse_word(const json& j) {
    if (!j.is_object())
        bad("word must be an object");
    const json& jl = field(j, "letters");
    if (!jl.is_array())
        bad("word letters must be an array");
    if (jl.empty())
        return {};
    RingPtr ring = parse_ring(field(j, "ring"));
    GeneratorWord w;
    for (const auto& l : jl)
        w.push_back(parse_letter(l, ring));
    return w;
}

// --- points and homotopies ------------------------------------------------

json point_json(const QuadricPoint& pt) {
    json j;
    j["ring"] = ring_json(pt.ring());
    j["variant"] = pt.variant == Variant::Q ? "Q" : "Q1";
    j["p"] = vec_json(pt.p);
    j["f"] = vec_json(pt.f);
    j["last"] = elem_json(pt.last);
    return j;
}

QuadricPoint parse_point(const json& j) {
    if (!j.is_object())
        bad("point must be an object");
    RingPtr ring = parse_ring(field(j, "ring"));
    std::string variant = str_field(j, "variant");
    if (variant != "Q" && variant != "Q1")
        bad("point variant must be \"Q\" or \"Q1\"");
    QuadricPoint pt;
    pt.variant = variant == "Q" ? Variant::Q : Variant::QPrime;
    pt.p = parse_vec(field(j, "p"), ring, "point block p");
    pt.f = parse_vec(field(j, "f"), ring, "point block f");
    pt.last = parse_elem(field(j, "last"), ring);
    if (pt.p.size() != pt.f.size())
        bad("point blocks p and f have different lengths");
    return pt;
}

json homotopy_json(const HomotopyCertificate& h) {
    json j;
    j["var"] = h.var;
    j["family"] = point_json(h.family);
    j["end0"] = point_json(h.end0);
    j["end1"] = point_json(h.end1);
    return j;
}

HomotopyCertificate parse_homotopy(const json& j) {
    if (!j.is_object())
        bad("homotopy must be an object");
    HomotopyCertificate h;
    h.var = str_field(j, "var");
    h.family = parse_point(field(j, "family"));
    h.end0 = parse_point(field(j, "end0"));
    h.end1 = parse_point(field(j, "end1"));
    return h;
}

// --- chains ---------------------------------------------------------------

json chain_json(const CertificateChain& c) {
    json j;
    json links = json::array();
    for (const auto& l : c.links) {
        json lk;
        lk["from"] = point_json(l.from);
        lk["to"] = point_json(l.to);
        switch (l.kind) {
        case LinkKind::Word:
            lk["word"] = word_json(l.word, l.from.ring());
            break;
        case LinkKind::Matrix:
            lk["matrix"] = mat_json(l.matrix);
            break;
        case LinkKind::Homotopy:
            lk["homotopy"] = homotopy_json(l.homotopy);
            break;
        }
        if (!l.note.empty())
            lk["note"] = l.note;
        links.push_back(std::move(lk));
    }
    j["links"] = std::move(links);
    j["meta"] = c.meta;
    return j;
}

CertificateChain parse_chain(const json& j) {
    if (!j.is_object())
        bad("chain must be an object");
    const json& jl = field(j, "links");
    if (!jl.is_array())
        bad("chain links must be an array");
    CertificateChain c;
    for (const auto& lj : jl) {
        if (!lj.is_object())
            bad("chain links must be objects");
        ChainLink l;
        l.from = parse_point(field(lj, "from"));
        l.to = parse_point(field(lj, "to"));
        if (auto it = lj.find("word"); it != lj.end()) {
            l.kind = LinkKind::Word;
            l.word = parse_word(*it);
        } else if (auto mt = lj.find("matrix"); mt != lj.end()) {
            l.kind = LinkKind::Matrix;
            l.matrix = parse_mat(*mt);
        } else if (auto ht = lj.find("homotopy"); ht != lj.end()) {
            l.kind = LinkKind::Homotopy;
            l.homotopy = parse_homotopy(*ht);
        } else {
            bad("chain link carries no witness");
        }
        if (auto nt = lj.find("note"); nt != lj.end()) {
            if (!nt->is_string())
                bad("link note must be a string");
            l.note = nt->get<std::string>();
        }
        c.links.push_back(std::move(l));
    }
    if (auto it = j.find("meta"); it != j.end()) {
        if (!it->is_string())
            bad("chain meta must be a string");
        c.meta = it->get<std::string>();
    }
    return c;
}

// --- instances --------------------------------------------------------------

json instance_json(const MonicInstance& inst) {
    json j;
    j["H"] = point_json(inst.H);
    j["g"] = inst.g.str(inst.H.ring()->variables);
    json b;
    // Bundle word rings: sigma_g over the g-inverted ring, sigma_contract
    // over H's ring, sigma_endpoints over the ring without the parameter.
    b["sigma_g"] = word_json(inst.bundle.sigma_g, nullptr);
    b["sigma_contract"] = word_json(inst.bundle.sigma_contract, inst.H.ring());
    b["sigma_endpoints"] = word_json(inst.bundle.sigma_endpoints, nullptr);
    if (inst.bundle.recursive_bundle)
        b["recursive"] = instance_json(*inst.bundle.recursive_bundle);
    j["bundle"] = std::move(b);
    if (!inst.note.empty())
        j["note"] = inst.note;
    return j;
}

MonicInstance parse_instance(const json& j) {
    if (!j.is_object())
        bad("instance must be an object");
    MonicInstance inst;
    inst.H = parse_point(field(j, "H"));
    inst.g = parse_poly(field(j, "g"), inst.H.ring(), "the monic polynomial g");
    const json& b = field(j, "bundle");
    if (!b.is_object())
        bad("instance bundle must be an object");
    inst.bundle.sigma_g = parse_word(field(b, "sigma_g"));
    inst.bundle.sigma_contract = parse_word(field(b, "sigma_contract"));
    inst.bundle.sigma_endpoints = parse_word(field(b, "sigma_endpoints"));
    if (auto it = b.find("recursive"); it != b.end())
        inst.bundle.recursive_bundle = std::make_shared<MonicInstance>(parse_instance(*it));
    if (auto it = j.find("note"); it != j.end()) {
        if (!it->is_string())
            bad("instance note must be a string");
        inst.note = it->get<std::string>();
    }
    return inst;
}

// --- comaximality certificates ----------------------------------------------

json cert_json(const ComaximalCertificate& c, const RingPtr& ring) {
    json j;
    j["a"] = c.a.str(ring->variables);
    j["b"] = c.b.str(ring->variables);
    j["ma"] = c.ma;
    j["mb"] = c.mb;
    j["s"] = c.s.str(ring->variables);
    j["r"] = c.r.str(ring->variables);
    return j;
}

ComaximalCertificate parse_cert(const json& j, const RingPtr& ring) {
    if (!j.is_object())
        bad("certificate must be an object");
    ComaximalCertificate c;
    c.a = parse_poly(field(j, "a"), ring, "certificate a");
    c.b = parse_poly(field(j, "b"), ring, "certificate b");
    const json& ma = field(j, "ma");
    const json& mb = field(j, "mb");
    if (!ma.is_number_integer() || !mb.is_number_integer())
        bad("certificate exponents must be integers");
    c.ma = ma.get<int>();
    c.mb = mb.get<int>();
    if (c.ma < 1 || c.mb < 1)
        bad("certificate exponents must be positive");
    c.s = parse_poly(field(j, "s"), ring, "certificate s");
    c.r = parse_poly(field(j, "r"), ring, "certificate r");
    return c;
}

// --- documents ----------------------------------------------------------------

json document_json(const Document& d) {
    json j;
    j["format"] = "eoq-doc/1";
    j["kind"] = d.kind;
    j["n"] = d.n;
    j["ring"] = ring_json(d.ring);
    if (d.kind == "matrix")
        j["payload"] = mat_json(d.matrix);
    else if (d.kind == "word")
        j["payload"] = word_json(d.word, d.ring);
    else if (d.kind == "point")
        j["payload"] = point_json(d.point);
    else if (d.kind == "chain")
        j["payload"] = chain_json(d.chain);
    else if (d.kind == "instance" && d.instance)
        j["payload"] = instance_json(*d.instance);
    else if (d.kind == "polynomial")
        j["payload"] = vec_json(d.elements);
    else
        throw std::invalid_argument("document kind \"" + d.kind + "\" cannot serialize");
    if (d.certificate)
        j["certificate"] = cert_json(*d.certificate, d.ring);
    j["meta"] = d.meta;
    return j;
}

Document document_from_json(const json& j) {
    if (!j.is_object())
        bad("a document is a JSON object");
    if (str_field(j, "format") != "eoq-doc/1")
        bad("unsupported format (expected \"eoq-doc/1\")");
    Document d;
    d.kind = str_field(j, "kind");
    const json& jn = field(j, "n");
    if (!jn.is_number_unsigned())
        bad("field \"n\" must be a nonnegative integer");
    d.n = jn.get<std::size_t>();
    d.ring = parse_ring(field(j, "ring"));
    const json& p = field(j, "payload");
    if (d.kind == "matrix")
        d.matrix = parse_mat(p);
    else if (d.kind == "word")
        d.word = parse_word(p);
    else if (d.kind == "point")
        d.point = parse_point(p);
    else if (d.kind == "chain")
        d.chain = parse_chain(p);
    else if (d.kind == "instance")
        d.instance = std::make_shared<MonicInstance>(parse_instance(p));
    else if (d.kind == "polynomial")
        d.elements = parse_vec(p, d.ring, "polynomial payload");
    else
        bad("unknown document kind \"" + d.kind + "\"");
    if (auto it = j.find("certificate"); it != j.end())
        d.certificate = parse_cert(*it, d.ring);
    if (auto it = j.find("meta"); it != j.end()) {
        if (!it->is_object())
            bad("meta must be a string map");
        for (const auto& [k, v] : it->items()) {
            if (!v.is_string())
                bad("meta values must be strings");
            d.meta[k] = v.get<std::string>();
        }
    }
    return d;
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        bad(std::string("invalid JSON: ") + e.what());
    }
}

Document make_document(std::string kind, std::size_t n, RingPtr ring) {
    Document d;
    d.kind = std::move(kind);
    d.n = n;
    d.ring = std::move(ring);
    return d;
}

} // namespace

std::string serialize_document(const Document& d) { return document_json(d).dump(2) + "\n"; }

std::string serialize_documents(const std::vector<Document>& ds) {
    json arr = json::array();
    for (const auto& d : ds)
        arr.push_back(document_json(d));
    return arr.dump(2) + "\n";
}

Document parse_document(const std::string& text) {
    json j = parse_text(text);
    if (j.is_array()) {
        if (j.size() != 1)
            bad("expected a single document, found an array");
        return document_from_json(j.front());
    }
    return document_from_json(j);
}

std::vector<Document> parse_documents(const std::string& text) {
    json j = parse_text(text);
    std::vector<Document> out;
    if (j.is_array()) {
        for (const auto& e : j)
            out.push_back(document_from_json(e));
        return out;
    }
    out.push_back(document_from_json(j));
    return out;
}

Document matrix_document(std::size_t n, const Mat& m) {
    Document d = make_document("matrix", n, m.ring());
    d.matrix = m;
    return d;
}

Document word_document(std::size_t n, const RingPtr& ring, const GeneratorWord& w) {
    Document d = make_document("word", n, w.empty() ? ring : w.front().gen.ring());
    d.word = w;
    return d;
}

Document point_document(std::size_t n, const QuadricPoint& pt) {
    Document d = make_document("point", n, pt.ring());
    d.point = pt;
    return d;
}

Document chain_document(std::size_t n, const CertificateChain& c) {
    Document d = make_document("chain", n,
                               c.links.empty() ? make_ring({}, {}) : c.start().ring());
    d.chain = c;
    return d;
}

Document instance_document(std::size_t n, const MonicInstance& inst) {
    Document d = make_document("instance", n, inst.H.ring());
    d.instance = std::make_shared<MonicInstance>(inst);
    return d;
}

Document polynomial_document(const RingPtr& ring, Vec elements) {
    Document d = make_document("polynomial", 0, ring);
    d.elements = std::move(elements);
    return d;
}

void verify_document(const Document& d) {
    if (d.certificate && !verify_comaximal(*d.certificate))
        throw VerifyError("the comaximality certificate's identity fails");

    if (d.kind == "polynomial")
        return;

    QuadSpace qs(d.n);
    if (d.kind == "matrix") {
        const Mat& m = d.matrix;
        if (m.rows() != qs.dim() || m.cols() != qs.dim())
            throw VerifyError("matrix size does not match the declared rank");
        // Name the first offending entry of M^t B M - B.
        Mat gram = gram_matrix(qs, m.ring());
        Mat defect = m.transpose() * gram * m;
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t k = 0; k < m.cols(); ++k) {
                RingElement delta = defect.at(i, k) - gram.at(i, k);
                if (!delta.is_zero())
                    throw VerifyError("form defect at entry (" + std::to_string(i) + ", " +
                                      std::to_string(k) + "): " + delta.str());
            }
        if (d.ring->index_of("T") && !is_parameter_isometry(qs, m, "T"))
            throw VerifyError("the family does not start at the identity at T = 0");
        return;
    }
    if (d.kind == "word") {
        Mat m = evaluate_word(qs, d.ring, d.word);
        if (!is_isometry(qs, m))
            throw VerifyError("word does not evaluate to an isometry");
        return;
    }
    if (d.kind == "point") {
        if (d.point.n() != qs.n)
            throw VerifyError("point size does not match the declared rank");
        if (!q_membership(d.point))
            throw VerifyError("point is off its quadric: defect " +
                              membership_defect(d.point).str());
        return;
    }
    if (d.kind == "chain") {
        verify_chain(qs, d.chain);
        return;
    }
    if (d.kind == "instance") {
        if (!d.instance)
            throw VerifyError("instance document carries no instance");
        ingest_verify(qs, *d.instance);
        return;
    }
    throw VerifyError("no check defined for document kind \"" + d.kind + "\"");
}

} // namespace eoq
