#include "cheb/reports.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cheb {

u64 enum_contract_hash() { return fnv1a(kEnumContractName); }

std::string canonical_spec_string(const CampaignSpec& spec) {
    std::ostringstream os;
    os << "n=" << spec.n << ";mode=" << to_string(spec.mode) << ";r=" << spec.layer_r
       << ";min=" << spec.min_size << ";max=" << spec.max_size
       << ";exhaustive=" << (spec.sampling.exhaustive ? 1 : 0) << ";count=" << spec.sampling.count
       << ";seed=" << spec.sampling.seed << ";screen=" << (spec.screening ? 1 : 0) << ";I=";
    for (size_t i = 0; i < spec.single_I.size(); ++i) os << (i ? "," : "") << spec.single_I[i];
    os << ";J=";
    for (size_t i = 0; i < spec.single_J.size(); ++i) os << (i ? "," : "") << spec.single_J[i];
    os << ";ceiling=" << spec.max_class_size << ";" << kEnumContractName;
    return os.str();
}

u64 spec_hash(const CampaignSpec& spec) { return fnv1a(canonical_spec_string(spec)); }

namespace {

std::string hex64(u64 v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

u64 parse_hex64(const std::string& s) { return std::stoull(s, nullptr, 16); }

json indices_to_json(const std::vector<unsigned>& v) {
    json a = json::array();
    for (unsigned x : v) a.push_back(x);
    return a;
}

std::vector<unsigned> indices_from_json(const json& a) {
    std::vector<unsigned> v;
    for (const auto& x : a) v.push_back(x.get<unsigned>());
    return v;
}

}  // namespace

json to_json(const CampaignSpec& spec) {
    json j;
    j["n"] = spec.n;
    j["mode"] = to_string(spec.mode);
    j["layer_r"] = spec.layer_r;
    j["min_size"] = spec.min_size;
    j["max_size"] = spec.max_size;
    j["exhaustive"] = spec.sampling.exhaustive;
    j["samples"] = spec.sampling.count;
    j["seed"] = spec.sampling.seed;
    j["screening"] = spec.screening;
    j["I"] = indices_to_json(spec.single_I);
    j["J"] = indices_to_json(spec.single_J);
    j["max_class_size"] = spec.max_class_size;
    j["jobs"] = spec.jobs;
    return j;
}

CampaignSpec campaign_spec_from_json(const json& j) {
    CampaignSpec spec;
    spec.n = j.at("n").get<unsigned>();
    spec.mode = campaign_mode_from_string(j.at("mode").get<std::string>());
    spec.layer_r = j.at("layer_r").get<unsigned>();
    spec.min_size = j.at("min_size").get<unsigned>();
    spec.max_size = j.at("max_size").get<unsigned>();
    spec.sampling.exhaustive = j.at("exhaustive").get<bool>();
    spec.sampling.count = j.at("samples").get<u64>();
    spec.sampling.seed = j.at("seed").get<u64>();
    spec.screening = j.at("screening").get<bool>();
    spec.single_I = indices_from_json(j.at("I"));
    spec.single_J = indices_from_json(j.at("J"));
    spec.max_class_size = j.at("max_class_size").get<u64>();
    spec.jobs = j.at("jobs").get<unsigned>();
    return spec;
}

json to_json(const LayeredIndexSet& set) {
    json j;
    j["n"] = set.ctx.n;
    j["r"] = set.ctx.r;
    j["members"] = indices_to_json(set.members);
    return j;
}

LayeredIndexSet layered_set_from_json(const json& j) {
    CrtContext ctx(j.at("n").get<unsigned>(), j.at("r").get<unsigned>());
    return decompose(ctx, indices_from_json(j.at("members")));
}

json to_json(const CycElem& elem) {
    json j;
    j["n"] = elem.context()->n();
    json coeffs = json::array();
    for (const Rat& c : elem.coeffs()) coeffs.push_back(to_decimal(c));
    j["coeffs"] = coeffs;
    return j;
}

CycElem cyc_elem_from_json(const json& j) {
    auto ctx = make_cyclotomic_context(j.at("n").get<unsigned>());
    std::vector<Rat> coeffs;
    for (const auto& s : j.at("coeffs")) {
        Rat c(s.get<std::string>());
        c.canonicalize();
        coeffs.push_back(c);
    }
    return CycElem(ctx, std::move(coeffs));
}

json to_json(const FFElem& elem) {
    json j;
    j["p"] = elem.field()->characteristic();
    j["modulus"] = elem.field()->modulus();
    j["coeffs"] = elem.coeffs();
    return j;
}

FFElem ff_elem_from_json(const json& j) {
    FFPtr field = make_finite_field(j.at("p").get<u64>(),
                                    j.at("modulus").get<std::vector<u64>>());
    return FFElem(field, j.at("coeffs").get<std::vector<u64>>());
}

namespace {

std::string method_name(DetCertificate::Method m) {
    switch (m) {
        case DetCertificate::Method::modular_screen: return "modular-screen";
        case DetCertificate::Method::exact_division_free: return "exact-division-free";
        case DetCertificate::Method::field_elimination: return "field-elimination";
    }
    throw std::logic_error("method_name: bad method");
}

DetCertificate::Method method_from_name(const std::string& s) {
    if (s == "modular-screen") return DetCertificate::Method::modular_screen;
    if (s == "exact-division-free") return DetCertificate::Method::exact_division_free;
    if (s == "field-elimination") return DetCertificate::Method::field_elimination;
    throw std::invalid_argument("unknown certificate method: " + s);
}

}  // namespace

json to_json(const DetCertificate& cert) {
    json j;
    j["verdict"] = cert.verdict == DetCertificate::Verdict::nonsingular ? "nonsingular" : "singular";
    j["method"] = method_name(cert.method);
    if (cert.method == DetCertificate::Method::modular_screen) {
        j["screen_q"] = cert.screen_q;
        j["screen_root"] = cert.screen_root;
    }
    if (!cert.kernel.empty()) j["kernel"] = cert.kernel;
    return j;
}

DetCertificate certificate_from_json(const json& j) {
    DetCertificate cert;
    cert.verdict = j.at("verdict").get<std::string>() == "nonsingular"
                       ? DetCertificate::Verdict::nonsingular
                       : DetCertificate::Verdict::singular;
    cert.method = method_from_name(j.at("method").get<std::string>());
    cert.screen_q = j.value("screen_q", 0ULL);
    cert.screen_root = j.value("screen_root", 0ULL);
    if (j.contains("kernel")) cert.kernel = j.at("kernel").get<std::vector<std::string>>();
    return cert;
}

json to_json(const Finding& finding) {
    json j;
    j["I"] = indices_to_json(finding.I);
    j["J"] = indices_to_json(finding.J);
    j["certificate"] = to_json(finding.certificate);
    return j;
}

Finding finding_from_json(const json& j) {
    Finding f;
    f.I = indices_from_json(j.at("I"));
    f.J = indices_from_json(j.at("J"));
    f.certificate = certificate_from_json(j.at("certificate"));
    return f;
}

json to_json(const CampaignCounts& counts) {
    json j;
    j["checked"] = counts.checked;
    j["nonsingular"] = counts.nonsingular;
    j["singular"] = counts.singular;
    j["screened_only"] = counts.screened_only;
    j["escalated"] = counts.escalated;
    return j;
}

CampaignCounts counts_from_json(const json& j) {
    CampaignCounts c;
    c.checked = j.at("checked").get<u64>();
    c.nonsingular = j.at("nonsingular").get<u64>();
    c.singular = j.at("singular").get<u64>();
    c.screened_only = j.at("screened_only").get<u64>();
    c.escalated = j.at("escalated").get<u64>();
    return c;
}

namespace {

std::string kind_name(HypothesisReport::Kind k) {
    switch (k) {
        case HypothesisReport::Kind::even_two_prime: return "2p-unconditional";
        case HypothesisReport::Kind::gated_two_prime: return "pr-gated";
        case HypothesisReport::Kind::not_applicable: return "not-applicable";
    }
    throw std::logic_error("kind_name: bad kind");
}

HypothesisReport::Kind kind_from_name(const std::string& s) {
    if (s == "2p-unconditional") return HypothesisReport::Kind::even_two_prime;
    if (s == "pr-gated") return HypothesisReport::Kind::gated_two_prime;
    if (s == "not-applicable") return HypothesisReport::Kind::not_applicable;
    throw std::invalid_argument("unknown hypothesis kind: " + s);
}

}  // namespace

json to_json(const HypothesisReport& hyp) {
    json j;
    j["n"] = hyp.n;
    j["kind"] = kind_name(hyp.kind);
    j["p"] = hyp.p;
    j["r"] = hyp.r;
    json orients = json::array();
    for (const auto& o : hyp.orientations) {
        json jo;
        jo["p"] = o.p;
        jo["r"] = o.r;
        jo["order_p_mod_r"] = o.order_p_mod_r;
        jo["primitive"] = o.primitive;
        jo["gamma_r"] = o.gamma_r;
        jo["exceeds_gamma"] = o.exceeds_gamma;
        jo["applicable"] = o.applicable;
        orients.push_back(jo);
    }
    j["orientations"] = orients;
    j["reasons"] = hyp.reasons;
    return j;
}

HypothesisReport hypothesis_from_json(const json& j) {
    HypothesisReport hyp;
    hyp.n = j.at("n").get<unsigned>();
    hyp.kind = kind_from_name(j.at("kind").get<std::string>());
    hyp.p = j.at("p").get<unsigned>();
    hyp.r = j.at("r").get<unsigned>();
    for (const auto& jo : j.at("orientations")) {
        HypothesisReport::Orientation o;
        o.p = jo.at("p").get<unsigned>();
        o.r = jo.at("r").get<unsigned>();
        o.order_p_mod_r = jo.at("order_p_mod_r").get<u64>();
        o.primitive = jo.at("primitive").get<bool>();
        o.gamma_r = jo.at("gamma_r").get<std::string>();
        o.exceeds_gamma = jo.at("exceeds_gamma").get<bool>();
        o.applicable = jo.at("applicable").get<bool>();
        hyp.orientations.push_back(std::move(o));
    }
    hyp.reasons = j.at("reasons").get<std::vector<std::string>>();
    return hyp;
}

json to_json(const CampaignReport& report) {
    json j;
    j["spec"] = to_json(report.spec);
    j["spec_hash"] = hex64(spec_hash(report.spec));
    j["enum_contract"] = std::string(kEnumContractName);
    j["enum_contract_hash"] = hex64(enum_contract_hash());
    j["class_size"] = report.class_size.get_str();
    j["counts"] = to_json(report.counts);
    json findings = json::array();
    for (const auto& f : report.singular_findings) findings.push_back(to_json(f));
    j["singular_findings"] = findings;
    if (report.hypothesis)
        j["hypothesis"] = to_json(*report.hypothesis);
    else
        j["hypothesis"] = nullptr;
    if (report.screen_q) {
        j["screen"] = json{{"q", report.screen_q}, {"root", report.screen_root}};
    } else {
        j["screen"] = nullptr;
    }
    j["completed"] = report.completed;
    j["runtime_ms"] = report.runtime_ms;
    return j;
}

CampaignReport campaign_report_from_json(const json& j) {
    CampaignReport report;
    report.spec = campaign_spec_from_json(j.at("spec"));
    report.class_size = Int(j.at("class_size").get<std::string>());
    report.counts = counts_from_json(j.at("counts"));
    for (const auto& jf : j.at("singular_findings"))
        report.singular_findings.push_back(finding_from_json(jf));
    if (!j.at("hypothesis").is_null()) report.hypothesis = hypothesis_from_json(j.at("hypothesis"));
    if (!j.at("screen").is_null()) {
        report.screen_q = j.at("screen").at("q").get<u64>();
        report.screen_root = j.at("screen").at("root").get<u64>();
    }
    report.completed = j.at("completed").get<bool>();
    report.runtime_ms = j.at("runtime_ms").get<u64>();
    return report;
}

json to_json(const GammaTable& table) {
    json j;
    j["r"] = table.r;
    json entries = json::array();
    for (const auto& e : table.entries) {
        json je;
        je["n"] = e.n;
        je["gamma"] = to_decimal(e.gamma);
        json tuples = json::array();
        for (const auto& t : e.argmax) tuples.push_back(indices_to_json(t));
        je["argmax"] = tuples;
        entries.push_back(je);
    }
    j["entries"] = entries;
    j["gamma_capital"] = to_decimal(table.gamma_capital);
    j["argmax_n"] = indices_to_json(table.argmax_n);
    if (!table.lower_bound_tuple.empty()) {
        j["lower_bound_tuple"] = indices_to_json(table.lower_bound_tuple);
        j["lower_bound_ratio"] = to_decimal(table.lower_bound_ratio);
    }
    return j;
}

json to_json(const ZhangReport& report) {
    json j;
    j["r"] = report.r;
    j["p"] = report.p;
    j["order_p_mod_r"] = report.order_p_mod_r;
    j["gamma_r"] = report.gamma_r;
    j["gamma_ok"] = report.gamma_ok;
    j["waived"] = report.waived;
    j["checked"] = report.checked;
    j["nonsingular"] = report.nonsingular;
    json singular = json::array();
    for (const auto& [I, J] : report.singular) {
        json js;
        js["I"] = indices_to_json(I);
        js["J"] = indices_to_json(J);
        singular.push_back(js);
    }
    j["singular"] = singular;
    return j;
}

json feasibility_to_json(unsigned r, unsigned m, const FeasibilityResult& result) {
    json j;
    j["r"] = r;
    j["m"] = m;
    j["pairs_checked"] = result.pairs_checked;
    j["found"] = result.found;
    if (result.found) {
        j["I"] = indices_to_json(result.I);
        j["J"] = indices_to_json(result.J);
        json values = json::array();
        for (const auto& v : result.witness->values()) values.push_back(to_string(v));
        j["witness"] = values;
        j["statement"] = "layered pair singular: witness f satisfies the per-layer support bound";
    } else {
        std::ostringstream os;
        os << "no layered pair singular => the layered uncertainty principle holds for (r, m) = ("
           << r << ", " << m << ")";
        j["statement"] = os.str();
    }
    return j;
}

ProgressLog::ProgressLog(std::filesystem::path path, u64 spec_hash)
    : path_(std::move(path)), spec_hash_(spec_hash) {
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
}

void ProgressLog::append(u64 cursor, const CampaignCounts& counts,
                         const std::vector<Finding>& findings) {
    json j;
    j["spec"] = hex64(spec_hash_);
    j["contract"] = hex64(enum_contract_hash());
    j["cursor"] = cursor;
    j["counts"] = to_json(counts);
    json jf = json::array();
    for (const auto& f : findings) jf.push_back(to_json(f));
    j["findings"] = jf;
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("ProgressLog: cannot open " + path_.string());
    out << j.dump() << "\n";
    out.flush();
}

std::optional<ResumeState> ProgressLog::load(const std::filesystem::path& path,
                                             u64 expected_spec_hash) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string line, last;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        // Keep only lines that parse: a torn final line is ignored.
        if (json::accept(line)) last = line;
    }
    if (last.empty()) return std::nullopt;
    json j = json::parse(last);
    if (parse_hex64(j.at("spec").get<std::string>()) != expected_spec_hash)
        throw std::domain_error("ProgressLog: spec hash mismatch (edited spec?)");
    if (parse_hex64(j.at("contract").get<std::string>()) != enum_contract_hash())
        throw std::domain_error("ProgressLog: enumeration contract changed");
    ResumeState state;
    state.cursor = j.at("cursor").get<u64>();
    state.counts = counts_from_json(j.at("counts"));
    for (const auto& jf : j.at("findings")) state.findings.push_back(finding_from_json(jf));
    return state;
}

std::filesystem::path progress_path(const CampaignSpec& spec) {
    const char* env = std::getenv("CHEB_CACHE_DIR");
    std::filesystem::path dir = env && *env ? std::filesystem::path(env)
                                            : std::filesystem::path(".cheb-cache");
    return dir / ("progress_" + hex64(spec_hash(spec)) + ".jsonl");
}

}  // namespace cheb
