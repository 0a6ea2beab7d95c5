"""Model feature: the FedSDWC network and its checkpoints."""
