# cyclosense - eigenvalue-based cyclostationary spectrum sensing simulator
