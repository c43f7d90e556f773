#include "poloc/sim/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "poloc/crypto/keys.hpp"
#include "poloc/errors.hpp"
#include "poloc/pow/poisson.hpp"

namespace poloc::sim {

std::mt19937_64 make_stream(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

std::uint64_t repetition_seed(std::uint64_t base_seed, std::size_t repetition) {
  return base_seed ^ static_cast<std::uint64_t>(repetition);
}

Route generate_route(const RoadNetwork& net, std::size_t length, const ScenarioConfig& cfg,
                     std::mt19937_64& rng) {
  if (length == 0) throw InvalidArgument("route length must be positive");
  Route r;
  std::uniform_int_distribution<std::size_t> pick_start(1, net.size());
  r.rsus.push_back(static_cast<RsuId>(pick_start(rng)));
  while (r.rsus.size() < length) {
    const auto& nb = net.neighbors(r.rsus.back());
    std::vector<RsuId> options;
    for (auto u : nb)
      if (r.rsus.size() < 2 || u != r.rsus[r.rsus.size() - 2]) options.push_back(u);
    if (options.empty()) options = nb;
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    r.rsus.push_back(options[pick(rng)]);
  }
  r.traverse_time =
      std::uniform_real_distribution<double>(cfg.traverse_time_min, cfg.traverse_time_max)(rng);
  if (cfg.traverse_time_min == cfg.traverse_time_max) r.traverse_time = cfg.traverse_time_min;
  r.start_time = cfg.start_window > 0
                     ? std::uniform_real_distribution<double>(0.0, cfg.start_window)(rng)
                     : 0.0;
  for (std::size_t k = 0; k < length; ++k)
    r.timestamps.push_back(
        static_cast<std::uint32_t>(std::floor(r.start_time + static_cast<double>(k) * r.traverse_time)));
  return r;
}

std::vector<Route> generate_routes(const RoadNetwork& net, const ScenarioConfig& cfg,
                                   std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> len(cfg.trajectory_length_min, cfg.trajectory_length_max);
  std::vector<Route> out;
  for (std::size_t v = 0; v < cfg.vehicle_count; ++v) out.push_back(generate_route(net, len(rng), cfg, rng));
  return out;
}

std::size_t Population::attackers() const {
  return static_cast<std::size_t>(
      std::count_if(vehicles.begin(), vehicles.end(), [](const VehiclePlan& v) { return v.malicious; }));
}

std::size_t Population::forged_total() const {
  std::size_t n = 0;
  for (const auto& v : vehicles) n += v.forged.size();
  return n;
}

Population generate_population(const RoadNetwork& net, const ScenarioConfig& cfg, std::mt19937_64& rng) {
  cfg.validate();
  Population pop;
  auto routes = generate_routes(net, cfg, rng);
  for (auto& r : routes) pop.vehicles.push_back({false, std::move(r), {}});

  // Exactly round(fraction * count) attackers, chosen by partial Fisher-Yates.
  const auto attackers = static_cast<std::size_t>(
      std::llround(cfg.malicious_fraction * static_cast<double>(cfg.vehicle_count)));
  std::vector<std::size_t> idx(cfg.vehicle_count);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < attackers; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
    std::swap(idx[i], idx[pick(rng)]);
    pop.vehicles[idx[i]].malicious = true;
  }

  for (auto& v : pop.vehicles) {
    if (!v.malicious) continue;
    std::size_t count = 0;
    if (cfg.forged_distribution == ForgedDistribution::uniform) {
      count = std::uniform_int_distribution<std::size_t>(cfg.forged_min, cfg.forged_max)(rng);
    } else {
      count = cfg.forged_mean > 0
                  ? static_cast<std::size_t>(std::poisson_distribution<long>(cfg.forged_mean)(rng))
                  : 0;
      count = std::min(count, cfg.forged_cap);
    }
    const std::size_t l = v.route.rsus.size();
    for (std::size_t f = 0; f < count; ++f) {
      if (!cfg.forged_jitter || l < 2) {
        v.forged.push_back({0, l});
        continue;
      }
      const std::size_t lo = std::min(cfg.forged_min_length, l - 1);
      const std::size_t len = std::uniform_int_distribution<std::size_t>(lo, l - 1)(rng);
      const std::size_t start = std::uniform_int_distribution<std::size_t>(0, l - len)(rng);
      v.forged.push_back({start, len});
    }
  }
  return pop;
}

Environment Environment::create(const ScenarioConfig& cfg) {
  cfg.validate();
  Environment env;
  env.config = cfg;
  auto net_rng = make_stream(cfg.rng_seed, Stream::network);
  env.network = generate_network(cfg.rsu_count, cfg.topology, net_rng);
  env.table = cfg.target_table();
  if (cfg.drive_protocol) {
    auto key_rng = make_stream(cfg.rng_seed, Stream::keys);
    auto km = crypto::deal_group_keys(crypto::GroupParams::default_256(), cfg.threshold_t,
                                      cfg.rsu_count, key_rng());
    env.authority = std::make_shared<const protocol::TrustedAuthority>(std::move(km));
  }
  return env;
}

namespace {

struct Session {
  bool forged = false;
  // Longest completed segment of a restarted trajectory and its protocol state.
  std::optional<std::pair<std::size_t, std::size_t>> best_segment;
  std::optional<protocol::Vehicle> best_vehicle;
  std::size_t start = 0;  // first hop (segment start for restarted sessions)
  std::size_t end = 0;    // last hop, inclusive
  bool alive = true;
  std::uint64_t tag = 0;  // distinguishes fast-path hashing seeds
  std::optional<protocol::Vehicle> vehicle;
};

// Per-repetition state shared by all vehicles.
class Runner {
 public:
  Runner(const Environment& env, PowMode mode, std::uint64_t rep_seed)
      : env_(env),
        cfg_(env.config),
        mode_(mode),
        rep_seed_(rep_seed),
        pow_rng_(make_stream(rep_seed, Stream::pow)),
        crypto_rng_(make_stream(rep_seed, Stream::crypto)) {
    for (RsuId id = 1; id <= env.network.size(); ++id)
      tags_.push_back(protocol::random_tag(id, 0, crypto_rng_));
    if (env.authority) {
      const auto policy = mode == PowMode::hashing ? protocol::PowPolicy::verify
                                                   : protocol::PowPolicy::external;
      for (RsuId id = 1; id <= env.network.size(); ++id) {
        const auto& nb = env.network.neighbors(id);
        rsus_.emplace_back(env.authority->rsu_config(id, {nb.begin(), nb.end()}, env.table, policy),
                           tags_[id - 1]);
      }
      for (auto& rsu : rsus_)
        for (const auto& t : tags_) rsu.learn_tag(t);
    }
  }

  void run_vehicle(std::size_t v, const VehiclePlan& plan, Formation& out) {
    const auto& route = plan.route;
    const std::size_t l = route.rsus.size();
    std::vector<Session> sessions;
    auto make = [&](bool forged, std::size_t start, std::size_t end) {
      Session s;
      s.forged = forged;
      s.start = start;
      s.end = end;
      s.tag = next_tag_++;
      return s;
    };
    sessions.push_back(make(false, 0, l - 1));
    for (const auto& f : plan.forged) sessions.push_back(make(true, f.start_hop, f.start_hop + f.length - 1));
    bool actual_intact = true;

    for (std::size_t h = 0; h < l; ++h) {
      std::vector<Session*> gated;
      for (auto& s : sessions)
        if (s.alive && s.start < h && h <= s.end) gated.push_back(&s);

      if (!gated.empty()) {
        std::vector<std::uint64_t> nonces(gated.size(), 0);
        std::size_t survivors = gated.size();
        if (mode_ != PowMode::disabled) {
          ++out.pow_gates;
          const std::uint32_t dt = route.timestamps[h] - route.timestamps[h - 1];
          const pow::Target target = pow::lookup_target(env_.table, dt);
          const double budget = cfg_.hash_rate * route.traverse_time;
          std::size_t solutions = 0;
          if (mode_ == PowMode::analytic) {
            solutions = pow::sample_solution_count(
                pow::poisson_lambda(target.value, budget, cfg_.output_bits), pow_rng_);
          } else {
            solutions = solve_in_order(gated, nonces, target, static_cast<std::uint64_t>(budget), v, h);
          }
          survivors = std::min(solutions, gated.size());
          if (survivors > solutions) ++out.survivor_excess;
        }
        for (std::size_t i = 0; i < gated.size(); ++i) {
          Session& s = *gated[i];
          if (i < survivors && checkin(s, route, h, nonces[i], out)) continue;
          if (s.forged) {
            s.alive = false;
            ++out.forged_blocked;
          } else {
            // A stopped legitimate trajectory starts over at this RSU; the
            // vehicle keeps its longest segment for submission.
            actual_intact = false;
            const std::size_t done = h - s.start;
            if (!s.best_segment || done >= s.best_segment->second - s.best_segment->first + 1) {
              s.best_segment = {s.start, h - 1};
              s.best_vehicle = std::move(s.vehicle);
            }
            s.vehicle.reset();
            s.start = h;
            begin(s, route, h, out);
          }
        }
      }

      for (auto& s : sessions)
        if (s.alive && s.start == h && !s.vehicle && env_.authority) begin(s, route, h, out);
    }

    for (std::size_t i = 0; i < sessions.size(); ++i) {
      const Session& s = sessions[i];
      if (!s.alive) continue;
      pending_.push_back({assemble(s, route, out), s.forged ? Label::sybil : Label::actual, v});
    }
    if (plan.malicious) {
      AttackerOutcome a{v, plan.forged.size(), 0, actual_intact};
      for (const auto& s : sessions)
        if (s.forged && s.alive) ++a.surviving;
      out.attackers.push_back(a);
    } else {
      ++out.honest_vehicles;
      if (actual_intact) ++out.honest_intact;
    }
    out.forged_attempted += plan.forged.size();
  }

  void finish(Formation& out) {
    auto order_rng = make_stream(rep_seed_, Stream::order);
    std::shuffle(pending_.begin(), pending_.end(), order_rng);
    for (std::size_t i = 0; i < pending_.size(); ++i) {
      auto& p = pending_[i];
      p.trajectory.id = "T" + std::to_string(i + 1);
      out.trajectories.push_back(std::move(p.trajectory));
      out.truth.labels.push_back(p.label);
      out.truth.owner.push_back(p.owner);
    }
  }

 private:
  struct Pending {
    Trajectory trajectory;
    Label label;
    std::size_t owner;
  };

  // Real hashing: the attacker works on each gated session in priority order
  // until it is solved, while the shared budget lasts.
  std::size_t solve_in_order(const std::vector<Session*>& gated, std::vector<std::uint64_t>& nonces,
                             const pow::Target& target, std::uint64_t budget, std::size_t v,
                             std::size_t h) {
    std::size_t solved = 0;
    for (std::size_t i = 0; i < gated.size() && budget > 0; ++i) {
      Bytes seed;
      if (gated[i]->vehicle && gated[i]->vehicle->current()) {
        seed = protocol::encode_authorized(env_.authority->params(), *gated[i]->vehicle->current());
      } else {
        put_u64_be(seed, rep_seed_);
        put_u64_be(seed, v);
        put_u64_be(seed, gated[i]->tag);
        put_u64_be(seed, gated[i]->start);
        put_u64_be(seed, h);
      }
      const Digest inner = sha256(seed);
      bool found = false;
      for (std::uint64_t nonce = 0; budget > 0; ++nonce) {
        --budget;
        if (pow::puzzle_value_from_inner(inner, nonce, target.output_bits) < target.value) {
          nonces[i] = nonce;
          found = true;
          break;
        }
      }
      if (!found) break;
      ++solved;
    }
    return solved;
  }

  void begin(Session& s, const Route& route, std::size_t h, Formation& out) {
    if (!env_.authority) return;
    auto keys = env_.authority->register_vehicle(s.end - h + 1, crypto_rng_);
    s.vehicle.emplace(env_.authority->params(), std::move(keys));
    auto req = s.vehicle->begin_trajectory();
    auto res = rsus_[route.rsus[h] - 1].handle_initial_request(req, route.timestamps[h]);
    if (!res) {
      ++out.protocol_failures;
      return;
    }
    s.vehicle->accept(std::move(*res.value));
  }

  bool checkin(Session& s, const Route& route, std::size_t h, std::uint64_t nonce, Formation& out) {
    if (!env_.authority) return true;
    if (!s.vehicle || !s.vehicle->current()) {
      ++out.protocol_failures;
      return false;
    }
    auto msg = s.vehicle->prepare_checkin_with_nonce(nonce);
    auto& rsu = rsus_[route.rsus[h] - 1];
    std::optional<bool> verdict;
    if (rsu.config().pow_policy == protocol::PowPolicy::external) verdict = true;
    auto res = rsu.handle_checkin(msg, route.timestamps[h], verdict);
    if (!res) {
      ++out.protocol_failures;
      return false;
    }
    s.vehicle->accept(std::move(*res.value));
    return true;
  }

  // The longest of the session's segments; ties go to the later one.
  Trajectory assemble(const Session& s, const Route& route, Formation& out) const {
    std::size_t first = s.start, last = s.end;
    const protocol::Vehicle* vehicle = s.vehicle ? &*s.vehicle : nullptr;
    if (s.best_segment && s.best_segment->second - s.best_segment->first > s.end - s.start) {
      std::tie(first, last) = *s.best_segment;
      vehicle = s.best_vehicle ? &*s.best_vehicle : nullptr;
    }
    if (vehicle && vehicle->current()) {
      auto t = protocol::extract_trajectory(*vehicle->current());
      if (!protocol::verify_trajectory(env_.authority->params(),
                                       env_.authority->keys().group_public_key, t))
        ++out.protocol_failures;
      return t;
    }
    Trajectory t;
    for (std::size_t h = first; h <= last; ++h)
      t.entries.push_back({route.timestamps[h], tags_[route.rsus[h] - 1]});
    return t;
  }

  const Environment& env_;
  const ScenarioConfig& cfg_;
  PowMode mode_;
  std::uint64_t rep_seed_;
  std::mt19937_64 pow_rng_;
  std::mt19937_64 crypto_rng_;
  std::vector<protocol::LocationTag> tags_;
  std::vector<protocol::Rsu> rsus_;
  std::vector<Pending> pending_;
  std::uint64_t next_tag_ = 0;
};

}  // namespace

Formation form_trajectories(const Environment& env, const Population& population, PowMode mode,
                            std::uint64_t rep_seed) {
  Formation out;
  Runner runner(env, mode, rep_seed);
  for (std::size_t v = 0; v < population.vehicles.size(); ++v)
    runner.run_vehicle(v, population.vehicles[v], out);
  runner.finish(out);
  return out;
}

RepetitionMetrics evaluate(const Formation& formation, const detection::DetectionParams& params,
                           detection::DetectionRun* run_out) {
  RepetitionMetrics m;
  auto run = detection::run_detection(formation.trajectories, params);
  m.detector = detection::compute_metrics(run.verdict.labels, formation.truth.labels);
  m.scheme = m.detector;
  m.scheme.tp += formation.forged_blocked;
  m.detect_ms = run.elapsed_ms;
  m.detect_work = run.work();
  m.trajectories = formation.trajectories.size();
  m.forged_submitted = formation.forged_attempted - formation.forged_blocked;
  m.honest_completion = formation.honest_vehicles == 0
                            ? 1.0
                            : static_cast<double>(formation.honest_intact) /
                                  static_cast<double>(formation.honest_vehicles);
  if (run_out) *run_out = std::move(run);
  return m;
}

ScenarioResult ScenarioResult::aggregate(const std::vector<RepetitionMetrics>& reps,
                                         const std::vector<std::vector<AttackerOutcome>>& attackers) {
  ScenarioResult r;
  r.repetitions = reps.size();
  auto collect = [&](auto get) {
    std::vector<double> v;
    for (const auto& m : reps) v.push_back(static_cast<double>(get(m)));
    return summarize(v);
  };
  r.fpr = collect([](const RepetitionMetrics& m) { return m.scheme.fpr(); });
  r.fnr = collect([](const RepetitionMetrics& m) { return m.scheme.fnr(); });
  r.dr = collect([](const RepetitionMetrics& m) { return m.scheme.dr(); });
  r.detector_fnr = collect([](const RepetitionMetrics& m) { return m.detector.fnr(); });
  r.detect_ms = collect([](const RepetitionMetrics& m) { return m.detect_ms; });
  r.detect_work = collect([](const RepetitionMetrics& m) { return m.detect_work; });
  r.trajectories = collect([](const RepetitionMetrics& m) { return m.trajectories; });
  r.forged_submitted = collect([](const RepetitionMetrics& m) { return m.forged_submitted; });
  r.honest_completion = collect([](const RepetitionMetrics& m) { return m.honest_completion; });
  for (const auto& rep : attackers)
    for (const auto& a : rep) ++r.surviving_forged_histogram[a.surviving];
  return r;
}

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (error) std::rethrow_exception(error);
}

ScenarioRun run_scenario(const ScenarioConfig& cfg, std::size_t jobs) {
  const Environment env = Environment::create(cfg);
  const auto params = cfg.detection();
  std::vector<RepetitionMetrics> metrics(cfg.repetitions);
  std::vector<std::vector<AttackerOutcome>> attackers(cfg.repetitions);
  ScenarioRun run;
  parallel_for(cfg.repetitions, jobs, [&](std::size_t rep) {
    const auto seed = repetition_seed(cfg.rng_seed, rep);
    auto pop_rng = make_stream(seed, Stream::population);
    const auto pop = generate_population(env.network, cfg, pop_rng);
    auto formation = form_trajectories(env, pop, cfg.pow_mode, seed);
    metrics[rep] = evaluate(formation, params);
    attackers[rep] = formation.attackers;
    if (rep == 0) {
      run.trajectories = std::move(formation.trajectories);
      run.truth = std::move(formation.truth);
    }
  });
  run.result = ScenarioResult::aggregate(metrics, attackers);
  run.repetitions = std::move(metrics);
  return run;
}

}  // namespace poloc::sim
