#pragma once

#include <string>
#include <vector>

#include "qzeno/experiment.hpp"

namespace qzeno {

struct PresetInfo {
  std::string name;
  std::string description;
};

inline std::vector<PresetInfo> list_presets() {
  return {
      {"three-level",
       "Spin-1 particle in a transverse field with |S^Z| measured; the m=0 "
       "level mediates virtual transitions between m=-1 and m=+1 and the "
       "state relaxes onto the dark state with survival probability 1/2."},
      {"spin-chain-region",
       "4-site XX chain with the magnetization of sites 2-3 measured; "
       "exchange across the region boundary is frozen at leading order and "
       "re-enters as correlated second-order pair processes."},
      {"lattice-region",
       "5-site Bose-Hubbard chain (2 atoms, U=0) with the occupation of the "
       "central site pinned by measurement; boundary hopping is suppressed "
       "and second-order terms dress the remaining dynamics."},
      {"lattice-difference",
       "4-site Bose-Hubbard chain (2 atoms, U=0) measuring the occupation "
       "difference N_A - N_C between region A (site 1, weight +1) and region "
       "C (site 4, weight -1) with region B (sites 2-3) unmeasured; the "
       "measurement mediates pair process-like effects between A and C."},
      {"fig4",
       "4 sites, 2 atoms, U=0, dtJ=1e-2, measurement imposing the constraint "
       "N2+N3=1 on the central region, initial state |1,1,0,0>; compares "
       "exact, quasi-Zeno and Zeno evolutions."},
  };
}

inline ExperimentConfig preset_config(const std::string& name) {
  ExperimentConfig c;
  if (name == "three-level") {
    c.model.kind = ModelKind::Spin1Transverse;
    c.model.lambda = 1.0;
    c.observable.kind = ObservableKind::AbsSz;
    c.initial_label = "-1";
    c.dt = 1e-2;
    c.tau = 700.0;
    c.order = 2;
    c.mode = RunMode::Effective;
    c.seed = 11;
    c.output_path = "three-level";
    return c;
  }
  if (name == "spin-chain-region") {
    c.model.kind = ModelKind::XXChain;
    c.model.j = 1.0;
    c.model.sites = 4;
    c.observable.kind = ObservableKind::RegionMagnetization;
    c.observable.weights = {0, 1, 1, 0};
    c.initial_label = "udud";
    c.dt = 1e-2;
    c.tau = 200.0;
    c.order = 2;
    c.mode = RunMode::Compare;
    c.seed = 23;
    c.output_path = "spin-chain-region";
    return c;
  }
  if (name == "lattice-region") {
    c.model.kind = ModelKind::BoseHubbard;
    c.model.j = 1.0;
    c.model.u = 0.0;
    c.model.sites = 5;
    c.model.total_particles = 2;
    c.observable.kind = ObservableKind::RegionOccupation;
    c.observable.weights = {0, 0, 1, 0, 0};
    c.initial_label = "1,0,1,0,0";
    c.dt = 1e-2;
    c.tau = 200.0;
    c.order = 2;
    c.mode = RunMode::Compare;
    c.seed = 31;
    c.output_path = "lattice-region";
    return c;
  }
  if (name == "lattice-difference") {
    c.model.kind = ModelKind::BoseHubbard;
    c.model.j = 1.0;
    c.model.u = 0.0;
    c.model.sites = 4;
    c.model.total_particles = 2;
    c.observable.kind = ObservableKind::RegionOccupationDifference;
    c.observable.weights = {1, 0, 0, -1};
    c.initial_label = "1,0,0,1";
    c.dt = 1e-2;
    c.tau = 200.0;
    c.order = 2;
    c.mode = RunMode::Compare;
    c.seed = 37;
    c.output_path = "lattice-difference";
    return c;
  }
  if (name == "fig4") {
    c.model.kind = ModelKind::BoseHubbard;
    c.model.j = 1.0;
    c.model.u = 0.0;
    c.model.sites = 4;
    c.model.total_particles = 2;
    c.observable.kind = ObservableKind::RegionOccupation;
    c.observable.weights = {0, 1, 1, 0};
    c.initial_label = "1,1,0,0";
    c.dt = 1e-2;
    c.tau = 300.0;
    c.order = 2;
    c.mode = RunMode::Compare;
    c.seed = 4;
    c.output_path = "fig4";
    return c;
  }
  throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace qzeno
