#include "fockrank/instance_io.hpp"

#include <fstream>
#include <json.hpp>

namespace fockrank {

namespace {

using Json = nlohmann::ordered_json;
using VKind = ValidationError::Kind;

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    throw ValidationError(VKind::BadField, "field '" + field + "': " + why);
}

Complex parse_complex(const Json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        bad_field(field, "expected [re, im]");
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

Json dump_complex(Complex z) { return Json::array({z.real(), z.imag()}); }

ProductState parse_blocks(const Json& blocks, Statistics stat,
                          const std::string& field) {
    if (!blocks.is_array() || blocks.empty()) {
        bad_field(field, "expected a non-empty array of blocks");
    }
    ProductState state;
    state.statistics = stat;
    int mu = 0;
    for (const auto& block : blocks) {
        const std::string where = field + "[" + std::to_string(mu) + "]";
        if (!block.is_object() || !block.contains("d") ||
            !block["d"].is_number_integer()) {
            bad_field(where + ".d", "expected an integer mode count");
        }
        FactorState f;
        f.d = block["d"].get<int>();
        f.statistics = stat;
        if (!block.contains("terms") || !block["terms"].is_array()) {
            bad_field(where + ".terms", "expected an array of terms");
        }
        int t = 0;
        for (const auto& term : block["terms"]) {
            const std::string term_where =
                where + ".terms[" + std::to_string(t) + "]";
            if (!term.is_object() || !term.contains("occ") ||
                !term["occ"].is_array()) {
                bad_field(term_where + ".occ", "expected an occupation array");
            }
            OccVector occ;
            for (const auto& n : term["occ"]) {
                if (!n.is_number_integer()) {
                    bad_field(term_where + ".occ", "expected integers");
                }
                occ.push_back(n.get<int>());
            }
            if (!term.contains("amp")) {
                bad_field(term_where + ".amp", "missing amplitude");
            }
            const Complex amp = parse_complex(term["amp"], term_where + ".amp");
            f.terms[occ] += amp;
            ++t;
        }
        state.factors.push_back(std::move(f));
        ++mu;
    }
    return state;
}

CMatrix parse_matrix(const Json& j, int rows, int cols, const std::string& field) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows) {
        bad_field(field, "expected " + std::to_string(rows) + " rows");
    }
    CMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const auto& row = j[r];
        if (!row.is_array() || static_cast<int>(row.size()) != cols) {
            bad_field(field + "[" + std::to_string(r) + "]",
                      "expected " + std::to_string(cols) + " entries");
        }
        for (int c = 0; c < cols; ++c) {
            m(r, c) = parse_complex(
                row[c], field + "[" + std::to_string(r) + "][" +
                            std::to_string(c) + "]");
        }
    }
    return m;
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        throw ValidationError(VKind::BadField,
                              std::string("JSON parse error: ") + e.what());
    }

    if (!j.contains("statistics") || !j["statistics"].is_string()) {
        bad_field("statistics", "expected \"boson\" or \"fermion\"");
    }
    const std::string stat_name = j["statistics"].get<std::string>();
    Statistics stat;
    if (stat_name == "boson") {
        stat = Statistics::Boson;
    } else if (stat_name == "fermion") {
        stat = Statistics::Fermion;
    } else {
        bad_field("statistics", "unknown value '" + stat_name + "'");
    }

    if (!j.contains("k") || !j["k"].is_number_integer()) {
        bad_field("k", "expected an integer rank");
    }
    const int k = j["k"].get<int>();
    if (k <= 0) bad_field("k", "rank must be positive");

    if (!j.contains("blocks")) bad_field("blocks", "missing");
    Instance inst;
    inst.bra = parse_blocks(j["blocks"], stat, "blocks");
    if (j.contains("ket_blocks")) {
        inst.ket = parse_blocks(j["ket_blocks"], stat, "ket_blocks");
        inst.distinct_bra_ket = true;
    }

    const int modes = inst.bra.total_modes();
    if (!j.contains("u")) bad_field("u", "missing");
    if (!j.contains("v")) bad_field("v", "missing");
    inst.op.u = parse_matrix(j["u"], modes, k, "u");
    inst.op.v = parse_matrix(j["v"], k, modes, "v");

    return validate_instance(std::move(inst));
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError(VKind::BadField, "cannot open '" + path + "'");
    }
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_instance(text);
}

std::string serialize_instance(const Instance& instance) {
    Json j;
    j["statistics"] = to_string(instance.bra.statistics);
    j["k"] = instance.op.rank();

    const auto dump_blocks = [](const ProductState& state) {
        Json blocks = Json::array();
        for (const auto& f : state.factors) {
            Json terms = Json::array();
            for (const auto& [occ, amp] : f.terms) {
                terms.push_back(Json{{"occ", occ}, {"amp", dump_complex(amp)}});
            }
            blocks.push_back(Json{{"d", f.d}, {"terms", std::move(terms)}});
        }
        return blocks;
    };
    j["blocks"] = dump_blocks(instance.bra);
    if (instance.distinct_bra_ket) {
        j["ket_blocks"] = dump_blocks(instance.ket);
    }

    const auto dump_matrix = [](const CMatrix& m) {
        Json rows = Json::array();
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            Json row = Json::array();
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                row.push_back(dump_complex(m(r, c)));
            }
            rows.push_back(std::move(row));
        }
        return rows;
    };
    j["u"] = dump_matrix(instance.op.u);
    j["v"] = dump_matrix(instance.op.v);

    return j.dump(2) + "\n";
}

void save_instance(const Instance& instance, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError(VKind::BadField, "cannot write '" + path + "'");
    }
    out << serialize_instance(instance);
}

}  // namespace fockrank
