#pragma once
// Ray-pushing rewrite system evaluating a GMN diagram's wall-crossing contribution.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wc/gmn.hpp"
#include "wc/lattice.hpp"
#include "wc/spectrum.hpp"
#include "wc/symbolic.hpp"

namespace wc {

struct OrderingError : std::logic_error {
  using std::logic_error::logic_error;
};
struct DecayDiagnostics : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A vertex integrates X_c along the ray of `ray` read at region `reg`.
struct DecayVertex {
  Charge c;
  Charge ray;
  Region reg = Region::Plus;
  bool alive = true;
};

// Plus(c): ray at u+; Minus(c): settled at u-; Unbalanced: ray at u- of a base, offset c - base pending.
enum class Annotation { Plus, Minus, Unbalanced };
const char* annotation_name(Annotation a);

struct SingularTag {
  int moved = -1;
  int other = -1;
  // "below" when the moving ray approached counterclockwise, "above" otherwise
  std::string side;
  bool other_is_parent = false;
};

struct DecayState {
  std::vector<DecayVertex> v;
  std::vector<int> parent;
  std::vector<std::vector<int>> kids;
  int eps = 1;
  std::vector<SingularTag> sing;
  std::vector<std::string> trail;

  int root() const;
  int depth(int x) const;
  std::vector<int> alive() const;
  std::size_t size() const;
  Annotation annotation(int x) const;
  bool settled(int x) const;
  Charge total() const;
  // integrand charges, edges parent -> child
  LabelledTree as_tree() const;
  std::string str(const Theory& th) const;
};

DecayState initial_state(const RootedDiagram& d);
ZValue vertex_phase(const Theory& th, const DecayVertex& x);

// Push v's ray to the u- ray of its integrand charge. The first state is the principal one;
// each further state is a residue where v merged into a crossed neighbour.
std::vector<DecayState> move_vertex(const Theory& th, const DecayState& s, int v, bool record = false);
// move_vertex restricted to Plus vertices whose ancestors are all non-Plus. With `strict`, a
// sweep over one of v's children throws OrderingError.
std::vector<DecayState> promote(const Theory& th, const DecayState& s, int v, bool record = false,
                                bool strict = false);
// Does promoting v sweep over one of its children?
bool promote_hits_child(const Theory& th, const DecayState& s, int v);
// move_vertex restricted to Unbalanced vertices.
std::vector<DecayState> rebalance(const Theory& th, const DecayState& s, int v, bool record = false);
bool would_be_singular(const Theory& th, const DecayState& s, int v);

enum class Schedule { RootFirst, LeavesFirst };
const char* schedule_name(Schedule s);
// Next vertex to move or -1 when every vertex is settled. A plus vertex is movable once no
// ancestor is plus; RootFirst prefers the shallowest movable vertex, LeavesFirst the deepest.
int next_vertex(const Theory& th, const DecayState& s, Schedule sched);

struct SingularTerm {
  // canonical directed form of the aligned terminal diagram
  std::string key;
  std::string side;
  // +1 when the moving vertex sat below the coincident neighbour (child), -1 otherwise
  int kappa = 1;
  int vertices = 0;
  int eps = 1;
  std::string residual;
};

struct DecayResult {
  std::vector<int> singletons;
  std::vector<SingularTerm> singular;
  std::vector<DecayState> singleton_states;
  long steps = 0;
  long discarded = 0;
  // promotions whose sweep crossed a child ray
  long child_crossings = 0;
  bool effective = true;
  int eps_sum() const;
};

constexpr long kDefaultStepBound = 2000000;

DecayResult run_decay(const Theory& th, const RootedDiagram& d, Schedule sched = Schedule::RootFirst,
                      bool record = false, long step_bound = kDefaultStepBound);

struct SingularCoefficient {
  SingularTerm term;
  Q coef;
};

struct GmnContribution {
  Weight weight;
  Q p;
  DecayResult decay;
  // coefficient of 1, or of sigma(total) for twisted theories
  Q regular;
  std::vector<SingularCoefficient> singular;
  bool twisted = false;
  SymbolicRational value() const;
};

GmnContribution gmn_contribution(const Theory& th, const SpectrumTable& strong, const RootedDiagram& d,
                                 Schedule sched = Schedule::RootFirst, bool record = false);

// Symbol name used in SymbolicRational values for a singular integral.
std::string singular_symbol(const std::string& key, const std::string& side);

}  // namespace wc
