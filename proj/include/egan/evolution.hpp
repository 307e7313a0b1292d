#pragma once

#include <array>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "egan/adam.hpp"
#include "egan/autodiff.hpp"
#include "egan/data.hpp"
#include "egan/mlp.hpp"
#include "egan/rng.hpp"
#include "egan/types.hpp"

namespace egan {

/**
 * Variation operators. Each mutation updates a generator copy by one Adam
 * step on its own adversarial objective. The enum order is also the
 * deterministic tie-break order during selection.
 */
enum class Mutation { Minimax, Heuristic, LeastSquares };

inline constexpr std::array<Mutation, 3> kAllMutations = {
    Mutation::Minimax, Mutation::Heuristic, Mutation::LeastSquares};

std::string_view to_string(Mutation m);
Mutation mutation_from_string(std::string_view name);

/** Where an individual came from: parent slot, operator, and step. */
struct Lineage {
  int parent = -1;
  Mutation tag = Mutation::Minimax;
  long step = -1;
};

/** One generator: parameters plus its optimizer state. */
struct Individual {
  ParamVector theta;
  AdamState adam;
  Lineage lineage;
};

struct FitnessScore {
  scalar_t fq = 0;
  scalar_t fd = 0;
  scalar_t total = 0;
};

/** total = fq + gamma * fd. Requires gamma >= 0. */
FitnessScore fitness(scalar_t fq, scalar_t fd, scalar_t gamma);

/** fd is capped here when the discriminator gradient norm underflows. */
inline constexpr scalar_t kDiversityLogCap = 20.0;

struct TrainingConfig {
  scalar_t alpha = 2e-4;
  scalar_t beta1 = 0.5;
  scalar_t beta2 = 0.99;
  scalar_t adam_eps = 1e-8;
  int n_d = 2;   // discriminator steps per iteration
  int n_p = 1;   // parents
  int m = 16;    // batch size
  scalar_t gamma = 0.5;
  long iterations = 0;
  std::uint64_t seed = 0;
  /** Active variation operators; the full set is the standard algorithm,
      a singleton degenerates to conventional single-objective training. */
  std::vector<Mutation> mutations{kAllMutations.begin(), kAllMutations.end()};
  long checkpoint_every = 0;  // 0 = no intermediate checkpoints
  MlpSpec gen_spec;
  MlpSpec disc_spec;

  int n_m() const { return static_cast<int>(mutations.size()); }
  AdamConfig adam() const { return {alpha, beta1, beta2, adam_eps}; }
};

void validate(const TrainingConfig& cfg);

struct ChildRecord {
  int parent = 0;
  Mutation tag = Mutation::Minimax;
  FitnessScore score;
};

struct EvolutionStepLog {
  long step = 0;
  std::vector<ChildRecord> children;      // n_p * n_m entries
  std::vector<int> survivors;             // indices into children, best first
  std::vector<scalar_t> disc_objectives;  // one per discriminator step
};

/**
 * The discriminator's maximization objective over one real batch and the
 * fake batches of all parents: mean log D(x) + mean log(1 - D(y)), with the
 * fake mean taken over the union of the per-parent batches. When grad_w is
 * given it receives d(objective)/dw in ParamVector order.
 */
scalar_t discriminator_objective(const MlpSpec& disc_spec, const ParamVector& w,
                                 const matrix_t& real, std::span<const matrix_t> fakes,
                                 std::vector<matrix_t>* grad_w = nullptr);

/**
 * n_d Adam ascent steps on the objective, each on a fresh real batch and a
 * fresh noise batch partitioned m/n_p rows per parent. Returns the objective
 * value observed before each step.
 */
std::vector<scalar_t> update_discriminator(const TrainingConfig& cfg, ParamVector& disc_w,
                                           AdamState& disc_adam, const DataSampler& data,
                                           std::span<const Individual> parents,
                                           RandomStream& data_rng, RandomStream& noise_rng);

/** Loss node for a mutation given the discriminator probabilities on fakes. */
NodeId mutation_loss_node(Tape& tape, Mutation tag, NodeId probs);

/**
 * The generator objective a child minimizes, evaluated at theta over one
 * noise batch against a frozen discriminator. When grad_theta is given it
 * receives d(loss)/dtheta in ParamVector order.
 */
scalar_t mutation_loss(Mutation tag, const MlpSpec& gen_spec, const MlpSpec& disc_spec,
                       const ParamVector& theta, const ParamVector& w, const matrix_t& z,
                       std::vector<matrix_t>* grad_theta = nullptr);

/**
 * One child: the parent's parameters after a single Adam step on the
 * mutation loss. The parent is untouched; the child continues the parent's
 * optimizer state, advanced by one step.
 */
Individual produce_child(const Individual& parent, int parent_idx, Mutation tag,
                         const MlpSpec& gen_spec, const MlpSpec& disc_spec,
                         const ParamVector& w, const matrix_t& z, const AdamConfig& adam_cfg,
                         long step, scalar_t* loss_out = nullptr);

/** Mean discriminator output over generated samples; lies in (0, 1). */
scalar_t quality_fitness(const MlpSpec& gen_spec, const MlpSpec& disc_spec,
                         const ParamVector& w, const ParamVector& theta, const matrix_t& z);

/**
 * Negative log of the Euclidean norm of the discriminator-loss gradient with
 * respect to all discriminator parameters, in batch-mean form. w is not
 * modified. Capped at kDiversityLogCap when the norm underflows.
 */
scalar_t diversity_fitness(const MlpSpec& gen_spec, const MlpSpec& disc_spec,
                           const ParamVector& w, const ParamVector& theta,
                           const matrix_t& real, const matrix_t& z);

/**
 * Top n_p children by total fitness, best first. Ties break by mutation
 * order (minimax, heuristic, least-squares), then by parent index.
 */
std::vector<int> select(std::span<const ChildRecord> children, int n_p);

/**
 * One full step: discriminator update, variation, evaluation on shared fresh
 * batches, selection. Fitness batches draw from eval_rng so the training
 * streams see the same draws as single-objective training.
 */
EvolutionStepLog evolutionary_step(long step, const TrainingConfig& cfg,
                                   std::vector<Individual>& population,
                                   ParamVector& disc_w, AdamState& disc_adam,
                                   const DataSampler& data, RandomStream& data_rng,
                                   RandomStream& noise_rng, RandomStream& eval_rng);

struct TrainHooks {
  std::function<void(const EvolutionStepLog&, std::span<const Individual>)> on_step;
  std::function<void(long step, std::span<const Individual>, const ParamVector& disc_w)>
      on_checkpoint;
};

struct RunArtifacts {
  std::vector<Individual> population;
  ParamVector disc_w;
  AdamState disc_adam;
  std::vector<EvolutionStepLog> logs;
};

/** Full training run; numeric failures abort after checkpointing the last
    good state, with the step index attached to the error. */
RunArtifacts train(const TrainingConfig& cfg, const DataSampler& data,
                   const TrainHooks& hooks = {});

struct BaselineStepLog {
  long step = 0;
  std::vector<scalar_t> disc_objectives;
  scalar_t gen_loss = 0;
};

struct BaselineHooks {
  std::function<void(const BaselineStepLog&, const Individual&)> on_step;
  std::function<void(long step, const Individual&, const ParamVector& disc_w)> on_checkpoint;
};

struct BaselineArtifacts {
  Individual generator;
  ParamVector disc_w;
  AdamState disc_adam;
  std::vector<BaselineStepLog> logs;
};

/** Conventional alternating training with one fixed generator objective:
    n_d discriminator steps, then one generator step. No fitness, no
    selection. */
BaselineArtifacts baseline_train(Mutation tag, const TrainingConfig& cfg,
                                 const DataSampler& data, const BaselineHooks& hooks = {});

}  // namespace egan
