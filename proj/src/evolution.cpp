#include "egan/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "egan/errors.hpp"

namespace egan {

namespace {

matrix_t vstack(std::span<const matrix_t> blocks) {
  index_t rows = 0;
  for (const matrix_t& b : blocks) rows += b.rows();
  matrix_t out(rows, blocks.front().cols());
  index_t at = 0;
  for (const matrix_t& b : blocks) {
    out.middleRows(at, b.rows()) = b;
    at += b.rows();
  }
  return out;
}

std::vector<matrix_t> collect_grads(const GradientMap& map, std::span<const NodeId> order) {
  std::vector<matrix_t> out;
  out.reserve(order.size());
  for (NodeId id : order) out.push_back(map.at(id));
  return out;
}

}  // namespace

std::string_view to_string(Mutation m) {
  switch (m) {
    case Mutation::Minimax: return "minimax";
    case Mutation::Heuristic: return "heuristic";
    case Mutation::LeastSquares: return "leastsq";
  }
  return "?";
}

Mutation mutation_from_string(std::string_view name) {
  for (Mutation m : kAllMutations)
    if (to_string(m) == name) return m;
  throw ConfigError("unknown mutation '" + std::string(name) +
                    "' (expected minimax, heuristic or leastsq)");
}

FitnessScore fitness(scalar_t fq, scalar_t fd, scalar_t gamma) {
  if (gamma < 0) throw UsageError("fitness: gamma must be >= 0");
  return {fq, fd, fq + gamma * fd};
}

void validate(const TrainingConfig& cfg) {
  if (cfg.n_p < 1) throw ConfigError("n_p must be >= 1");
  if (cfg.n_d < 1) throw ConfigError("n_d must be >= 1");
  if (cfg.m < 1) throw ConfigError("m must be >= 1");
  if (cfg.m % cfg.n_p != 0) throw ConfigError("m must be divisible by n_p");
  if (cfg.gamma < 0) throw ConfigError("gamma must be >= 0");
  if (cfg.iterations < 0) throw ConfigError("iterations must be >= 0");
  if (cfg.alpha <= 0) throw ConfigError("alpha must be positive");
  if (cfg.checkpoint_every < 0) throw ConfigError("checkpoint_every must be >= 0");
  if (cfg.mutations.empty()) throw ConfigError("at least one mutation must be enabled");
  for (std::size_t i = 0; i < cfg.mutations.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.mutations.size(); ++j)
      if (cfg.mutations[i] == cfg.mutations[j])
        throw ConfigError("duplicate mutation in config");
  validate(cfg.gen_spec);
  validate(cfg.disc_spec);
  if (cfg.gen_spec.output_activation != OutputActivation::Identity)
    throw ConfigError("generator output activation must be identity");
  if (cfg.disc_spec.output_activation != OutputActivation::Sigmoid)
    throw ConfigError("discriminator output activation must be sigmoid");
  if (cfg.gen_spec.output_dim != cfg.disc_spec.input_dim)
    throw ConfigError("generator output dim must match discriminator input dim");
}

scalar_t discriminator_objective(const MlpSpec& disc_spec, const ParamVector& w,
                                 const matrix_t& real, std::span<const matrix_t> fakes,
                                 std::vector<matrix_t>* grad_w) {
  if (fakes.empty()) throw UsageError("discriminator_objective: no fake batches");
  Tape tape;
  const std::vector<NodeId> w_nodes = tape_parameters(tape, w);
  const NodeId p_real = tape_forward(tape, disc_spec, w_nodes, tape.constant(real));
  const NodeId p_fake =
      tape_forward(tape, disc_spec, w_nodes, tape.constant(vstack(fakes)));
  const NodeId objective = tape.add(tape.mean(tape.log(p_real)),
                                    tape.mean(tape.log(tape.sub_from(1.0, p_fake))));
  if (grad_w) {
    const GradientMap grads = tape.backward(objective, w_nodes);
    *grad_w = collect_grads(grads, w_nodes);
  }
  return tape.scalar_value(objective);
}

std::vector<scalar_t> update_discriminator(const TrainingConfig& cfg, ParamVector& disc_w,
                                           AdamState& disc_adam, const DataSampler& data,
                                           std::span<const Individual> parents,
                                           RandomStream& data_rng, RandomStream& noise_rng) {
  if (parents.empty()) throw UsageError("update_discriminator: no parents");
  const index_t per_parent = cfg.m / static_cast<int>(parents.size());
  const index_t z_dim = cfg.gen_spec.input_dim;
  std::vector<scalar_t> objectives;
  objectives.reserve(static_cast<std::size_t>(cfg.n_d));
  for (int k = 0; k < cfg.n_d; ++k) {
    const matrix_t real = data.sample(cfg.m, data_rng);
    const matrix_t z = sample_noise(cfg.m, z_dim, noise_rng);
    std::vector<matrix_t> fakes;
    fakes.reserve(parents.size());
    for (std::size_t j = 0; j < parents.size(); ++j)
      fakes.push_back(gen_forward(cfg.gen_spec, parents[j].theta,
                                  z.middleRows(static_cast<index_t>(j) * per_parent,
                                               per_parent)));
    std::vector<matrix_t> grads;
    objectives.push_back(
        discriminator_objective(cfg.disc_spec, disc_w, real, fakes, &grads));
    for (matrix_t& g : grads) g = -g;  // ascend the objective
    adam_step(disc_w.tensors, grads, disc_adam, cfg.adam());
  }
  return objectives;
}

NodeId mutation_loss_node(Tape& tape, Mutation tag, NodeId probs) {
  switch (tag) {
    case Mutation::Minimax:
      return tape.scale(tape.mean(tape.log(tape.sub_from(1.0, probs))), 0.5);
    case Mutation::Heuristic:
      return tape.scale(tape.mean(tape.log(probs)), -0.5);
    case Mutation::LeastSquares:
      return tape.mean(tape.square(tape.sub_from(1.0, probs)));
  }
  throw UsageError("mutation_loss_node: bad mutation tag");
}

scalar_t mutation_loss(Mutation tag, const MlpSpec& gen_spec, const MlpSpec& disc_spec,
                       const ParamVector& theta, const ParamVector& w, const matrix_t& z,
                       std::vector<matrix_t>* grad_theta) {
  Tape tape;
  const std::vector<NodeId> theta_nodes = tape_parameters(tape, theta);
  const NodeId fake = tape_forward(tape, gen_spec, theta_nodes, tape.constant(z));
  const std::vector<NodeId> w_nodes = tape_constants(tape, w);
  const NodeId probs = tape_forward(tape, disc_spec, w_nodes, fake);
  const NodeId loss = mutation_loss_node(tape, tag, probs);
  if (grad_theta) {
    const GradientMap grads = tape.backward(loss, theta_nodes);
    *grad_theta = collect_grads(grads, theta_nodes);
  }
  return tape.scalar_value(loss);
}

Individual produce_child(const Individual& parent, int parent_idx, Mutation tag,
                         const MlpSpec& gen_spec, const MlpSpec& disc_spec,
                         const ParamVector& w, const matrix_t& z, const AdamConfig& adam_cfg,
                         long step, scalar_t* loss_out) {
  std::vector<matrix_t> grads;
  const scalar_t loss = mutation_loss(tag, gen_spec, disc_spec, parent.theta, w, z, &grads);
  for (const matrix_t& g : grads)
    if (!g.allFinite())
      throw NumericError(std::string("produce_child: non-finite gradient from ") +
                         std::string(to_string(tag)) + " mutation");
  Individual child;
  child.theta = parent.theta;
  child.adam = parent.adam;
  adam_step(child.theta.tensors, grads, child.adam, adam_cfg);
  child.lineage = {parent_idx, tag, step};
  if (loss_out) *loss_out = loss;
  return child;
}

scalar_t quality_fitness(const MlpSpec& gen_spec, const MlpSpec& disc_spec,
                         const ParamVector& w, const ParamVector& theta, const matrix_t& z) {
  return disc_forward(disc_spec, w, gen_forward(gen_spec, theta, z)).mean();
}

scalar_t diversity_fitness(const MlpSpec& gen_spec, const MlpSpec& disc_spec,
                           const ParamVector& w, const ParamVector& theta,
                           const matrix_t& real, const matrix_t& z) {
  const matrix_t fake = gen_forward(gen_spec, theta, z);
  Tape tape;
  const std::vector<NodeId> w_nodes = tape_parameters(tape, w);
  const NodeId p_real = tape_forward(tape, disc_spec, w_nodes, tape.constant(real));
  const NodeId p_fake = tape_forward(tape, disc_spec, w_nodes, tape.constant(fake));
  // batch-mean discriminator loss: -mean log D(x) - mean log(1 - D(y))
  const NodeId loss =
      tape.scale(tape.add(tape.mean(tape.log(p_real)),
                          tape.mean(tape.log(tape.sub_from(1.0, p_fake)))),
                 -1.0);
  const scalar_t norm = gradient_norm(tape.backward(loss, w_nodes));
  return std::min(-std::log(norm), kDiversityLogCap);
}

std::vector<int> select(std::span<const ChildRecord> children, int n_p) {
  if (static_cast<int>(children.size()) < n_p)
    throw UsageError("select: fewer children than parents requested");
  std::vector<int> order(children.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const ChildRecord& ca = children[static_cast<std::size_t>(a)];
    const ChildRecord& cb = children[static_cast<std::size_t>(b)];
    if (ca.score.total != cb.score.total) return ca.score.total > cb.score.total;
    if (ca.tag != cb.tag) return ca.tag < cb.tag;
    return ca.parent < cb.parent;
  });
  order.resize(static_cast<std::size_t>(n_p));
  return order;
}

EvolutionStepLog evolutionary_step(long step, const TrainingConfig& cfg,
                                   std::vector<Individual>& population,
                                   ParamVector& disc_w, AdamState& disc_adam,
                                   const DataSampler& data, RandomStream& data_rng,
                                   RandomStream& noise_rng, RandomStream& eval_rng) {
  if (static_cast<int>(population.size()) != cfg.n_p)
    throw UsageError("evolutionary_step: population size must equal n_p");

  EvolutionStepLog log;
  log.step = step;
  log.disc_objectives =
      update_discriminator(cfg, disc_w, disc_adam, data, population, data_rng, noise_rng);

  const index_t z_dim = cfg.gen_spec.input_dim;
  std::vector<Individual> children;
  children.reserve(population.size() * cfg.mutations.size());
  for (int j = 0; j < cfg.n_p; ++j) {
    for (Mutation tag : cfg.mutations) {
      const matrix_t z = sample_noise(cfg.m, z_dim, noise_rng);
      children.push_back(produce_child(population[static_cast<std::size_t>(j)], j, tag,
                                       cfg.gen_spec, cfg.disc_spec, disc_w, z, cfg.adam(),
                                       step));
    }
  }

  // Shared evaluation batches: fitness differences reflect parameters only.
  const matrix_t real_eval = data.sample(cfg.m, eval_rng);
  const matrix_t z_eval = sample_noise(cfg.m, z_dim, eval_rng);
  log.children.reserve(children.size());
  for (const Individual& child : children) {
    const scalar_t fq =
        quality_fitness(cfg.gen_spec, cfg.disc_spec, disc_w, child.theta, z_eval);
    const scalar_t fd = diversity_fitness(cfg.gen_spec, cfg.disc_spec, disc_w, child.theta,
                                          real_eval, z_eval);
    log.children.push_back(
        {child.lineage.parent, child.lineage.tag, fitness(fq, fd, cfg.gamma)});
  }

  log.survivors = select(log.children, cfg.n_p);
  std::vector<Individual> next;
  next.reserve(log.survivors.size());
  for (int idx : log.survivors)
    next.push_back(std::move(children[static_cast<std::size_t>(idx)]));
  population = std::move(next);
  return log;
}

namespace {

struct InitialState {
  std::vector<Individual> population;
  ParamVector disc_w;
  AdamState disc_adam;
};

InitialState initialize(const TrainingConfig& cfg) {
  RandomStream init_rng(cfg.seed, "init");
  InitialState s;
  s.population.reserve(static_cast<std::size_t>(cfg.n_p));
  for (int j = 0; j < cfg.n_p; ++j) {
    Individual ind;
    ind.theta = init_mlp(cfg.gen_spec, init_rng);
    ind.adam = AdamState::zeros_like(ind.theta.tensors);
    s.population.push_back(std::move(ind));
  }
  s.disc_w = init_mlp(cfg.disc_spec, init_rng);
  s.disc_adam = AdamState::zeros_like(s.disc_w.tensors);
  return s;
}

}  // namespace

RunArtifacts train(const TrainingConfig& cfg, const DataSampler& data,
                   const TrainHooks& hooks) {
  validate(cfg);
  InitialState s = initialize(cfg);
  RandomStream data_rng(cfg.seed, "data");
  RandomStream noise_rng(cfg.seed, "noise");
  RandomStream eval_rng(cfg.seed, "eval");

  RunArtifacts art;
  art.logs.reserve(static_cast<std::size_t>(cfg.iterations));
  for (long step = 0; step < cfg.iterations; ++step) {
    EvolutionStepLog log;
    try {
      log = evolutionary_step(step, cfg, s.population, s.disc_w, s.disc_adam, data,
                              data_rng, noise_rng, eval_rng);
    } catch (const NumericError& e) {
      if (hooks.on_checkpoint) hooks.on_checkpoint(step, s.population, s.disc_w);
      throw NumericError("step " + std::to_string(step) + ": " + e.what());
    }
    if (hooks.on_step) hooks.on_step(log, s.population);
    art.logs.push_back(std::move(log));
    if (cfg.checkpoint_every > 0 && (step + 1) % cfg.checkpoint_every == 0 &&
        hooks.on_checkpoint)
      hooks.on_checkpoint(step + 1, s.population, s.disc_w);
  }
  art.population = std::move(s.population);
  art.disc_w = std::move(s.disc_w);
  art.disc_adam = std::move(s.disc_adam);
  return art;
}

BaselineArtifacts baseline_train(Mutation tag, const TrainingConfig& cfg,
                                 const DataSampler& data, const BaselineHooks& hooks) {
  TrainingConfig base = cfg;
  base.n_p = 1;
  base.mutations = {tag};
  validate(base);
  InitialState s = initialize(base);
  RandomStream data_rng(base.seed, "data");
  RandomStream noise_rng(base.seed, "noise");

  BaselineArtifacts art;
  art.logs.reserve(static_cast<std::size_t>(base.iterations));
  Individual& gen = s.population.front();
  for (long step = 0; step < base.iterations; ++step) {
    BaselineStepLog log;
    log.step = step;
    try {
      log.disc_objectives = update_discriminator(base, s.disc_w, s.disc_adam, data,
                                                 {&gen, 1}, data_rng, noise_rng);
      const matrix_t z = sample_noise(base.m, base.gen_spec.input_dim, noise_rng);
      gen = produce_child(gen, 0, tag, base.gen_spec, base.disc_spec, s.disc_w, z,
                          base.adam(), step, &log.gen_loss);
    } catch (const NumericError& e) {
      if (hooks.on_checkpoint) hooks.on_checkpoint(step, gen, s.disc_w);
      throw NumericError("step " + std::to_string(step) + ": " + e.what());
    }
    if (hooks.on_step) hooks.on_step(log, gen);
    art.logs.push_back(std::move(log));
    if (base.checkpoint_every > 0 && (step + 1) % base.checkpoint_every == 0 &&
        hooks.on_checkpoint)
      hooks.on_checkpoint(step + 1, gen, s.disc_w);
  }
  art.generator = std::move(gen);
  art.disc_w = std::move(s.disc_w);
  art.disc_adam = std::move(s.disc_adam);
  return art;
}

}  // namespace egan
