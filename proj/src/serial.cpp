#include "projlab/serial.hpp"

#include <charconv>
#include <cstdint>
#include <cstring>

#include "projlab/errors.hpp"

namespace projlab {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string render_csv(const Table& table) {
    auto escape = [](const std::string& s) {
        if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += '"';
            out += c;
        }
        out += '"';
        return out;
    };
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        out += escape(table.header[i]);
    }
    out += "\r\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += escape(row[i]);
        }
        out += "\r\n";
    }
    return out;
}

namespace {

// Compact SHA-1, enough for content addressing of small artifacts.
struct Sha1 {
    std::uint32_t h[5] = {0x67452301u, 0xEFCDAB89u, 0x98BADCFEu, 0x10325476u, 0xC3D2E1F0u};
    std::uint64_t total = 0;
    unsigned char block[64];
    std::size_t fill = 0;

    static std::uint32_t rol(std::uint32_t x, int s) { return (x << s) | (x >> (32 - s)); }

    void process(const unsigned char* p) {
        std::uint32_t w[80];
        for (int i = 0; i < 16; ++i) {
            w[i] = (std::uint32_t(p[4 * i]) << 24) | (std::uint32_t(p[4 * i + 1]) << 16) |
                   (std::uint32_t(p[4 * i + 2]) << 8) | std::uint32_t(p[4 * i + 3]);
        }
        for (int i = 16; i < 80; ++i) {
            w[i] = rol(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);
        }
        std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4];
        for (int i = 0; i < 80; ++i) {
            std::uint32_t f, k;
            if (i < 20) {
                f = (b & c) | (~b & d);
                k = 0x5A827999u;
            } else if (i < 40) {
                f = b ^ c ^ d;
                k = 0x6ED9EBA1u;
            } else if (i < 60) {
                f = (b & c) | (b & d) | (c & d);
                k = 0x8F1BBCDCu;
            } else {
                f = b ^ c ^ d;
                k = 0xCA62C1D6u;
            }
            const std::uint32_t t = rol(a, 5) + f + e + k + w[i];
            e = d;
            d = c;
            c = rol(b, 30);
            b = a;
            a = t;
        }
        h[0] += a;
        h[1] += b;
        h[2] += c;
        h[3] += d;
        h[4] += e;
    }

    void update(const void* data, std::size_t len) {
        const unsigned char* p = static_cast<const unsigned char*>(data);
        total += len;
        while (len > 0) {
            const std::size_t take = std::min(len, sizeof block - fill);
            std::memcpy(block + fill, p, take);
            fill += take;
            p += take;
            len -= take;
            if (fill == sizeof block) {
                process(block);
                fill = 0;
            }
        }
    }

    std::string hexdigest() {
        const std::uint64_t bits = total * 8;
        const unsigned char one = 0x80;
        update(&one, 1);
        const unsigned char z = 0;
        while (fill != 56) update(&z, 1);
        unsigned char lenb[8];
        for (int i = 0; i < 8; ++i) lenb[i] = static_cast<unsigned char>(bits >> (56 - 8 * i));
        update(lenb, 8);
        static const char* hex = "0123456789abcdef";
        std::string out;
        for (std::uint32_t v : h) {
            for (int i = 7; i >= 0; --i) out += hex[(v >> (4 * i)) & 0xF];
        }
        return out;
    }
};

}  // namespace

std::string git_blob_sha1(const std::string& bytes) {
    Sha1 s;
    const std::string head = "blob " + std::to_string(bytes.size());
    s.update(head.data(), head.size());
    s.update("\0", 1);
    s.update(bytes.data(), bytes.size());
    return s.hexdigest();
}

FunctionOnUnitInterval parse_field(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return FunctionOnUnitInterval::zero();
    if (kind == "identity") return FunctionOnUnitInterval::identity();
    if (kind == "constant") return FunctionOnUnitInterval::constant(j.at("c").get<double>());
    if (kind == "power") return FunctionOnUnitInterval::power(j.at("p").get<double>());
    if (kind == "scaled") return FunctionOnUnitInterval::scaled(j.at("c").get<double>());
    if (kind == "affine") {
        return FunctionOnUnitInterval::affine(j.at("a").get<double>(), j.at("b").get<double>());
    }
    if (kind == "table") {
        std::vector<double> xs, ys;
        for (const auto& node : j.at("nodes")) {
            xs.push_back(node.at(0).get<double>());
            ys.push_back(node.at(1).get<double>());
        }
        return FunctionOnUnitInterval::interpolant(std::move(xs), std::move(ys));
    }
    throw ContractError("unknown field kind: " + kind);
}

std::string field_id(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") return "constant:" + format_double(j.at("c").get<double>());
    if (kind == "power") return "power:" + format_double(j.at("p").get<double>());
    if (kind == "scaled") return "scaled:" + format_double(j.at("c").get<double>());
    if (kind == "affine") {
        return "affine:" + format_double(j.at("a").get<double>()) + "+" +
               format_double(j.at("b").get<double>()) + "x";
    }
    if (kind == "table") return "table:" + std::to_string(j.at("nodes").size());
    return kind;
}

IntervalMeasure parse_measure(const Json& j) {
    const std::string kind = j.value("kind", std::string("samples"));
    MeasureKind mk;
    if (kind == "grid") {
        mk = MeasureKind::DensityGrid;
    } else if (kind == "samples") {
        mk = MeasureKind::Samples;
    } else if (kind == "atoms") {
        mk = MeasureKind::Atoms;
    } else {
        throw ContractError("unknown measure kind: " + kind);
    }
    std::vector<double> xs, ws;
    if (j.contains("atoms")) {
        for (const auto& a : j.at("atoms")) {
            xs.push_back(a.at(0).get<double>());
            ws.push_back(a.at(1).get<double>());
        }
    }
    return IntervalMeasure::make(mk, std::move(xs), std::move(ws), j.value("atom0", 0.0),
                                 j.value("atom1", 0.0));
}

Json measure_to_json(const IntervalMeasure& m) {
    Json j;
    switch (m.kind()) {
        case MeasureKind::DensityGrid: j["kind"] = "grid"; break;
        case MeasureKind::Samples: j["kind"] = "samples"; break;
        case MeasureKind::Atoms: j["kind"] = "atoms"; break;
    }
    j["atom0"] = m.atom0();
    j["atom1"] = m.atom1();
    Json atoms = Json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        atoms.push_back(Json::array({m.support()[i], m.weights()[i]}));
    }
    j["atoms"] = std::move(atoms);
    return j;
}

PairState parse_state(const Json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "free") {
        return free_pair_state(j.at("alpha").get<double>(), j.at("beta").get<double>(),
                               j.value("grid", 4000));
    }
    if (type == "explicit") {
        const auto& c = j.at("corners");
        return PairState::create(c.at(0).get<double>(), c.at(1).get<double>(),
                                 c.at(2).get<double>(), c.at(3).get<double>(),
                                 parse_measure(j.at("nu")));
    }
    if (type == "pushforward") {
        return pushforward_state(parse_state(j.at("base")), parse_field(j.at("psi")));
    }
    throw ContractError("unknown state type: " + type);
}

Json state_to_json(const PairState& s) {
    Json j;
    j["alpha"] = s.alpha();
    j["beta"] = s.beta();
    j["corners"] = Json::array({s.a11(), s.a10(), s.a01(), s.a00()});
    j["nu"] = measure_to_json(s.nu());
    return j;
}

PressureHamiltonian parse_hamiltonian(const Json& j) {
    PressureHamiltonian h;
    h.a = j.value("A", 0.0);
    h.b = j.value("B", 0.0);
    if (j.contains("psi")) h.psi = parse_field(j.at("psi"));
    return h;
}

BlockFamily parse_family(const Json& j) {
    std::vector<BlockFamily::Block> blocks;
    for (const auto& b : j.at("blocks")) {
        const std::string type = b.at("type").get<std::string>();
        if (type == "single") {
            blocks.push_back(SingleBlock{b.at("alpha").get<double>()});
        } else if (type == "pair") {
            PairBlock pb{parse_state(b.at("state")), PairSamplerKind::None, std::nullopt,
                         std::nullopt};
            const std::string sampler = b.value("sampler", std::string("none"));
            if (sampler == "haar") {
                pb.sampler = PairSamplerKind::HaarIndependent;
            } else if (sampler == "gibbs") {
                pb.sampler = PairSamplerKind::Gibbs;
                pb.psi = parse_field(b.at("psi"));
            } else if (sampler != "none") {
                throw ContractError("unknown pair sampler: " + sampler);
            }
            blocks.push_back(std::move(pb));
        } else {
            throw ContractError("unknown block type: " + type);
        }
    }
    return BlockFamily(std::move(blocks));
}

Word parse_word(const std::string& s) {
    Word w;
    for (char c : s) {
        if (c >= '0' && c <= '9') {
            w.push_back(c - '0');
        } else if (c == 'e') {
            w.push_back(0);
        } else if (c == 'f') {
            w.push_back(1);
        } else {
            throw ContractError("word letters must be digits (or e/f for pair words)");
        }
    }
    if (w.empty()) {
        throw ContractError("words must be nonempty");
    }
    return w;
}

std::string word_to_string(const Word& w) {
    std::string s;
    for (int g : w) s += static_cast<char>('0' + g);
    return s;
}

Json entropy_report_to_json(const EntropyReport& r) {
    Json j;
    j["chi_finite"] = r.chi.is_finite();
    if (r.chi.is_finite()) j["chi"] = r.chi.value();
    j["sigma_term"] = r.sigma_term;
    j["logx_term"] = r.logx_term;
    j["log1mx_term"] = r.log1mx_term;
    j["c_term"] = r.c_term;
    j["rho"] = r.rho;
    j["compatible"] = r.compatible;
    return j;
}

Json transport_report_to_json(const TransportReport& r) {
    Json j;
    j["lhs"] = r.lhs;
    j["rhs_infinite"] = r.rhs_infinite;
    if (!r.rhs_infinite) {
        j["rhs"] = r.rhs;
        j["slack"] = r.slack;
    }
    j["holds"] = r.holds;
    return j;
}

}  // namespace projlab
