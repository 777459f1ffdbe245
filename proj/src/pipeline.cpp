#include "ogtt/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "ogtt/csv.hpp"

namespace ogtt {

double round_sig9(double value) {
    if (!std::isfinite(value)) return value;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return std::strtod(buf, nullptr);
}

std::vector<FitResult> fit_all(const std::vector<OgttRecord>& records, const FitConfig& config, unsigned threads) {
    std::vector<FitResult> out(records.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, records.size())));

    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&](unsigned first) {
        for (std::size_t i = first; i < records.size(); i += threads) {
            try {
                out[i] = fit(records[i], config);
            } catch (const NonConvergenceError& e) {
                out[i] = e.best();
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::string digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string config_fingerprint(const PipelineOptions& o) {
    std::string s = to_key_value(o.fit);
    s += "omega_limit = " + format_double(o.thresholds.omega_max) + "\n";
    s += "cond1_error = " + format_double(o.thresholds.cond1_error) + "\n";
    s += "shape_delta_g = " + format_double(o.thresholds.shape_delta_g) + "\n";
    s += "cond2_error = " + format_double(o.thresholds.cond2_error) + "\n";
    s += "cond3_error = " + format_double(o.thresholds.cond3_error) + "\n";
    s += std::string("filter = ") + (o.filter ? "on" : "off") + "\n";
    if (const auto* t = std::get_if<TrainMode>(&o.svm)) {
        s += "svm = train\nsvm_c = " + format_double(t->c) + "\n";
    } else {
        const SvmModel& m = std::get<LoadMode>(o.svm).model;
        s += "svm = load\nw = " + format_double(m.w[0]) + "," + format_double(m.w[1]) + "\nb = " + format_double(m.b) +
             "\n";
    }
    return s;
}

Aggregates compute_aggregates(const std::vector<ReportEntry>& entries, const SvmModel& model) {
    Aggregates agg;
    agg.total = entries.size();
    std::size_t converged = 0;
    std::vector<IndexPoint> points;
    std::vector<Glycemia> predicted;
    for (const auto& e : entries) {
        if (!e.converged) {
            ++agg.nonconverged;
            continue;
        }
        ++converged;
        if (e.verdict.applicable) ++agg.applicable;
        if (!e.evaluated) continue;
        ++agg.evaluated;
        IndexPoint p;
        p.a = round_sig9(e.params.a);
        p.alpha = round_sig9(e.params.alpha);
        p.category = e.category;
        p.label = binary_of(e.category);
        p.patient_id = e.patient_id;
        points.push_back(std::move(p));
        predicted.push_back(e.prediction ? e.prediction->label : Glycemia::Normoglycemic);
    }
    agg.kept_fraction = converged == 0 ? 0.0 : static_cast<double>(agg.applicable) / static_cast<double>(converged);
    if (points.empty()) return agg;

    agg.accuracy = tally_accuracy(points, predicted);

    std::vector<CategoryGroup> groups;
    for (const auto& g : progression_groups()) {
        const bool present = std::any_of(points.begin(), points.end(), [&](const IndexPoint& p) {
            return std::find(g.begin(), g.end(), p.category) != g.end();
        });
        if (present) groups.push_back(g);
    }
    if (groups.size() >= 2) {
        agg.progression = progression_angles(points, groups, std::nullopt, model.scaling);
        if (groups.size() == progression_groups().size()) {
            std::vector<double> angles;
            for (const auto& g : agg.progression) angles.push_back(g.angle);
            agg.clockwise = is_clockwise(angles);
        }
    }
    return agg;
}

CohortReport run_pipeline(const std::vector<OgttRecord>& records, const PipelineOptions& options) {
    if (records.empty()) throw InputError("pipeline needs at least one record");
    for (const auto& r : records) validate(r);
    validate(options.fit);

    const std::vector<FitResult> fits = fit_all(records, options.fit, options.threads);

    CohortReport report;
    report.filter = options.filter;
    report.entries.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        ReportEntry e;
        e.patient_id = records[i].patient_id;
        e.category = classify_record(records[i]).category;
        e.params = fits[i].params;
        e.error_abs = fits[i].error_abs;
        e.converged = fits[i].converged;
        e.verdict = check_applicability(records[i], fits[i], options.thresholds);
        e.evaluated = e.converged && (!options.filter || e.verdict.applicable);
        report.entries.push_back(std::move(e));
    }

    if (const auto* mode = std::get_if<TrainMode>(&options.svm)) {
        std::vector<IndexPoint> points;
        for (const auto& e : report.entries) {
            if (e.evaluated) points.push_back(make_index_point(e.params.a, e.params.alpha, e.category, e.patient_id));
        }
        if (points.empty()) throw PipelineError("no records left to train the classifier on");
        report.model = train(points, mode->c);
    } else {
        report.model = std::get<LoadMode>(options.svm).model;
        validate(report.model);
    }

    for (auto& e : report.entries) {
        if (e.converged) e.prediction = predict(report.model, e.params.a, e.params.alpha);
    }
    report.aggregates = compute_aggregates(report.entries, report.model);
    report.provenance.config_hash = digest(config_fingerprint(options));
    report.provenance.input_digest = digest(to_csv(records));
    return report;
}

TrackResult track(const std::vector<OgttRecord>& records, const FitConfig& config,
                  const std::optional<SvmModel>& model) {
    if (model) validate(*model);

    std::vector<std::string> order;
    std::map<std::string, std::vector<std::size_t>> by_patient;
    for (std::size_t i = 0; i < records.size(); ++i) {
        validate(records[i]);
        auto [it, inserted] = by_patient.try_emplace(records[i].patient_id);
        if (inserted) order.push_back(records[i].patient_id);
        it->second.push_back(i);
    }

    TrackResult result;
    for (const auto& id : order) {
        const auto& rows = by_patient[id];
        if (rows.size() < 2) continue;
        const std::size_t with_seq = static_cast<std::size_t>(
            std::count_if(rows.begin(), rows.end(), [&](std::size_t i) { return records[i].seq.has_value(); }));
        if (with_seq != 0 && with_seq != rows.size()) {
            throw InputError("patient '" + id + "': seq must be given for all or none of its records");
        }

        Trajectory traj;
        traj.patient_id = id;
        for (std::size_t i : rows) {
            const OgttRecord& r = records[i];
            TrajectoryPoint tp;
            tp.order = r.seq ? *r.seq : static_cast<std::int64_t>(i);
            try {
                tp.fit = fit(r, config);
            } catch (const NonConvergenceError& e) {
                tp.fit = e.best();
                result.warnings.push_back("patient '" + id + "': fit did not converge for one visit");
            }
            tp.label = classify_record(r);
            tp.point = make_index_point(tp.fit.params.a, tp.fit.params.alpha, tp.label.category, id);
            if (model) tp.signed_distance = predict(*model, tp.point.a, tp.point.alpha).signed_distance;
            traj.points.push_back(std::move(tp));
        }
        std::stable_sort(traj.points.begin(), traj.points.end(),
                         [](const TrajectoryPoint& x, const TrajectoryPoint& y) { return x.order < y.order; });
        for (std::size_t k = 1; k < traj.points.size(); ++k) {
            if (traj.points[k].order == traj.points[k - 1].order) {
                throw InputError("patient '" + id + "': duplicate seq " + std::to_string(traj.points[k].order));
            }
        }
        result.trajectories.push_back(std::move(traj));
    }
    if (result.trajectories.empty()) result.warnings.push_back("no patient has two or more records; nothing to track");
    return result;
}

}  // namespace ogtt
