"""Graph, partition, kernel and result models"""
