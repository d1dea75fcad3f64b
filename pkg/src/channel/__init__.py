# Channel Module
