#include "ogtt/report.hpp"

#include "json.hpp"

namespace ogtt {

namespace {

using Json = nlohmann::ordered_json;

double r9(double v) { return round_sig9(v); }

Json params_json(const AckermanParams& p) {
    return Json{{"g0", r9(p.g0)}, {"a", r9(p.a)}, {"alpha", r9(p.alpha)}, {"omega", r9(p.omega)}, {"delta", r9(p.delta)}};
}

AckermanParams params_from(const Json& j) {
    return {j.at("g0").get<double>(), j.at("a").get<double>(), j.at("alpha").get<double>(), j.at("omega").get<double>(),
            j.at("delta").get<double>()};
}

Json model_json(const SvmModel& m) {
    return Json{{"w", {m.w[0], m.w[1]}},
                {"b", m.b},
                {"c", m.c},
                {"scaling",
                 {{"a", {{"shift", m.scaling.a.shift}, {"scale", m.scaling.a.scale}}},
                  {"alpha", {{"shift", m.scaling.alpha.shift}, {"scale", m.scaling.alpha.scale}}}}}};
}

SvmModel model_from(const Json& j) {
    SvmModel m;
    const auto& w = j.at("w");
    if (!w.is_array() || w.size() != 2) throw ModelError("model 'w' must be a 2-element array");
    m.w = {w[0].get<double>(), w[1].get<double>()};
    m.b = j.at("b").get<double>();
    m.c = j.at("c").get<double>();
    const auto& s = j.at("scaling");
    m.scaling.a = {s.at("a").at("shift").get<double>(), s.at("a").at("scale").get<double>()};
    m.scaling.alpha = {s.at("alpha").at("shift").get<double>(), s.at("alpha").at("scale").get<double>()};
    validate(m);
    return m;
}

Json verdict_json(const ApplicabilityVerdict& v) {
    return Json{{"applicable", v.applicable},
                {"omega_ok", v.omega_ok},
                {"condition", std::string(to_string(v.condition))},
                {"delta_g", r9(v.delta_g)},
                {"error_abs", r9(v.error_abs)}};
}

Condition condition_from(const std::string& s) {
    for (Condition c : {Condition::None, Condition::Cond1, Condition::Cond2, Condition::Cond3}) {
        if (to_string(c) == s) return c;
    }
    throw InputError("unknown applicability condition '" + s + "'");
}

Category category_from(const std::string& s) {
    if (auto c = parse_category(s)) return *c;
    throw InputError("unknown category '" + s + "'");
}

Json aggregates_json(const Aggregates& a) {
    Json per = Json::object();
    for (Category c : kAllCategories) {
        if (const auto& acc = a.accuracy.per_category[category_index(c)]) {
            per[std::string(to_string(c))] = Json{{"count", acc->count}, {"correct", acc->correct}, {"accuracy", r9(acc->accuracy)}};
        }
    }
    Json progression = Json::array();
    for (const auto& g : a.progression) {
        progression.push_back(Json{{"group", group_name(g.group)},
                                   {"count", g.count},
                                   {"centroid", {r9(g.centroid[0]), r9(g.centroid[1])}},
                                   {"angle", r9(g.angle)}});
    }
    return Json{{"total", a.total},
                {"nonconverged", a.nonconverged},
                {"applicable", a.applicable},
                {"evaluated", a.evaluated},
                {"kept_fraction", r9(a.kept_fraction)},
                {"accuracy",
                 {{"overall", r9(a.accuracy.overall)},
                  {"correct", a.accuracy.correct},
                  {"total", a.accuracy.total},
                  {"per_category", per},
                  {"confusion",
                   {{"rows", "actual"},
                    {"columns", "predicted"},
                    {"labels", {"normoglycemic", "dysglycemic"}},
                    {"matrix", {{a.accuracy.confusion[0][0], a.accuracy.confusion[0][1]},
                                {a.accuracy.confusion[1][0], a.accuracy.confusion[1][1]}}}}},
                  {"t2dm_as_normoglycemic", a.accuracy.t2dm_as_normoglycemic}}},
                {"progression", progression},
                {"clockwise", a.clockwise}};
}

Json entry_json(const ReportEntry& e) {
    Json j{{"patient_id", e.patient_id},
           {"category", std::string(to_string(e.category))},
           {"converged", e.converged},
           {"params", params_json(e.params)},
           {"error_abs", r9(e.error_abs)},
           {"verdict", verdict_json(e.verdict)},
           {"evaluated", e.evaluated}};
    if (e.prediction) {
        j["predicted"] = sign_of(e.prediction->label);
        j["signed_distance"] = r9(e.prediction->signed_distance);
    } else {
        j["predicted"] = nullptr;
        j["signed_distance"] = nullptr;
    }
    return j;
}

ReportEntry entry_from(const Json& j) {
    ReportEntry e;
    e.patient_id = j.at("patient_id").get<std::string>();
    e.category = category_from(j.at("category").get<std::string>());
    e.converged = j.at("converged").get<bool>();
    e.params = params_from(j.at("params"));
    e.error_abs = j.at("error_abs").get<double>();
    const auto& v = j.at("verdict");
    e.verdict.applicable = v.at("applicable").get<bool>();
    e.verdict.omega_ok = v.at("omega_ok").get<bool>();
    e.verdict.condition = condition_from(v.at("condition").get<std::string>());
    e.verdict.delta_g = v.at("delta_g").get<double>();
    e.verdict.error_abs = v.at("error_abs").get<double>();
    e.evaluated = j.at("evaluated").get<bool>();
    if (!j.at("predicted").is_null()) {
        const int label = j.at("predicted").get<int>();
        if (label != 1 && label != -1) throw InputError("predicted label must be +1 or -1");
        e.prediction = Prediction{label == 1 ? Glycemia::Normoglycemic : Glycemia::Dysglycemic,
                                  j.at("signed_distance").get<double>()};
    }
    return e;
}

}  // namespace

std::string model_to_json(const SvmModel& model) { return model_json(model).dump(2) + "\n"; }

SvmModel model_from_json(const std::string& text) {
    try {
        return model_from(Json::parse(text));
    } catch (const Json::exception& e) {
        throw ModelError(std::string("malformed model JSON: ") + e.what());
    }
}

std::string report_to_json(const CohortReport& report) {
    Json entries = Json::array();
    for (const auto& e : report.entries) entries.push_back(entry_json(e));
    Json j{{"provenance",
            {{"tool_version", report.provenance.tool_version},
             {"config_hash", report.provenance.config_hash},
             {"input_digest", report.provenance.input_digest}}},
           {"filter", report.filter},
           {"model", model_json(report.model)},
           {"aggregates", aggregates_json(report.aggregates)},
           {"entries", entries}};
    return j.dump(2) + "\n";
}

CohortReport report_from_json(const std::string& text) {
    CohortReport report;
    Json j;
    try {
        j = Json::parse(text);
        const auto& p = j.at("provenance");
        report.provenance = {p.at("config_hash").get<std::string>(), p.at("input_digest").get<std::string>(),
                             p.at("tool_version").get<std::string>()};
        report.filter = j.at("filter").get<bool>();
        report.model = model_from(j.at("model"));
        for (const auto& e : j.at("entries")) report.entries.push_back(entry_from(e));
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed report JSON: ") + e.what());
    }
    report.aggregates = compute_aggregates(report.entries, report.model);
    if (aggregates_json(report.aggregates) != j.at("aggregates")) {
        throw InputError("report aggregates do not match its entries");
    }
    return report;
}

std::string trajectories_to_json(const TrackResult& result) {
    Json trajectories = Json::array();
    for (const auto& t : result.trajectories) {
        Json points = Json::array();
        for (const auto& p : t.points) {
            Json pj{{"order", p.order},
                    {"category", std::string(to_string(p.label.category))},
                    {"label", sign_of(p.label.binary)},
                    {"a", r9(p.point.a)},
                    {"alpha", r9(p.point.alpha)},
                    {"error_abs", r9(p.fit.error_abs)},
                    {"converged", p.fit.converged}};
            if (p.signed_distance) pj["signed_distance"] = r9(*p.signed_distance);
            else pj["signed_distance"] = nullptr;
            points.push_back(std::move(pj));
        }
        trajectories.push_back(Json{{"patient_id", t.patient_id}, {"points", points}});
    }
    Json j{{"trajectories", trajectories}, {"warnings", result.warnings}};
    return j.dump(2) + "\n";
}

std::string fits_to_json(const std::vector<OgttRecord>& records, const std::vector<FitResult>& fits) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < records.size() && i < fits.size(); ++i) {
        const FitResult& f = fits[i];
        arr.push_back(Json{{"patient_id", records[i].patient_id},
                           {"params", params_json(f.params)},
                           {"error_abs", r9(f.error_abs)},
                           {"residuals", {r9(f.residuals[0]), r9(f.residuals[1]), r9(f.residuals[2]), r9(f.residuals[3]), r9(f.residuals[4])}},
                           {"objective", r9(f.objective)},
                           {"converged", f.converged},
                           {"starts_tried", f.starts_tried}});
    }
    return arr.dump(2) + "\n";
}

}  // namespace ogtt
